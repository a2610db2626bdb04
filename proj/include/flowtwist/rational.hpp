/*
Copyright 2026 the flowtwist authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace flowtwist {

// Exact rational scalar used for all tile and flow coordinates. Denominators
// grow like 4^k over a k-step rewrite sequence, so a fixed-width type is not
// an option.
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "num/den" or a bare integer. Throws std::runtime_error on garbage.
Rat rat_parse(const std::string& text);

}  // namespace flowtwist
