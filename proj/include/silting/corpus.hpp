#pragma once

#include "silting/quiver.hpp"

namespace silting::corpus {

/// 1 -a-> 2
inline QuiverPresentation a2(FieldSpec f = FieldSpec::prime(2)) {
  return {f, {"1", "2"}, {{"a", "1", "2"}}, {}, std::nullopt};
}

/// 1 -a-> 2 -b-> 3 with a then b equal to zero.
inline QuiverPresentation a3_zero_relation(FieldSpec f = FieldSpec::prime(2)) {
  return {f, {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}, {{{"1", {"a", "b"}}}}, std::nullopt};
}

/// k[x]/(x^2)
inline QuiverPresentation dual_numbers(FieldSpec f = FieldSpec::prime(2)) {
  return {f, {"1"}, {{"x", "1", "1"}}, {{{"1", {"x", "x"}}}}, std::nullopt};
}

inline QuiverPresentation semisimple_pair(FieldSpec f = FieldSpec::prime(2)) {
  return {f, {"1", "2"}, {}, {}, std::nullopt};
}

inline QuiverPresentation point(FieldSpec f = FieldSpec::prime(2)) { return {f, {"1"}, {}, {}, std::nullopt}; }

/// The triangular algebra [[k, D], [0, D]] as a bound quiver: loop x at 2, arrow n from 2 to 1, x.x = 0.
inline QuiverPresentation gamma0(FieldSpec f = FieldSpec::prime(2)) {
  return {f, {"1", "2"}, {{"n", "2", "1"}, {"x", "2", "2"}}, {{{"1", {"x", "x"}}}}, std::nullopt};
}

}  // namespace silting::corpus
