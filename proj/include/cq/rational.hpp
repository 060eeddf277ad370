// rational.hpp
// Exact rational scalar type. Coefficient arithmetic in relation/ideal code
// must never round; everything here is arbitrary-precision.

#ifndef CQ_RATIONAL_HPP
#define CQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace cq {

using Rat = boost::multiprecision::cpp_rational;

} // namespace cq

#endif
