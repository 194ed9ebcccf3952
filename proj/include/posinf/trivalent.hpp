#ifndef POSINF_TRIVALENT_HPP
#define POSINF_TRIVALENT_HPP

#include <string>

namespace posinf {

// Kleene three-valued truth. Unknown absorbs resource exhaustion; monotone
// evaluators may refine Unknown to True/False but never flip True<->False.
enum class Tri { False = 0, Unknown = 1, True = 2 };

inline Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }

inline Tri tri_not(Tri t) {
  switch (t) {
    case Tri::True: return Tri::False;
    case Tri::False: return Tri::True;
    default: return Tri::Unknown;
  }
}

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

inline Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

inline bool decided(Tri t) { return t != Tri::Unknown; }

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

}  // namespace posinf

#endif
