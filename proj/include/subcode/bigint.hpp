#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace subcode {
using BigInt = boost::multiprecision::cpp_int;
}
