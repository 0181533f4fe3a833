// Copyright 2026 The stokes-data Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stokes/scalar.hpp"

#include <cctype>
#include <stdexcept>

#include "stokes/error.hpp"

namespace stokes {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string n(num[0] == '+' ? num.substr(1) : num);
  mpz_class p(n, 10), q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::EqualFactors: return "EqualFactors";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::ConventionViolation: return "ConventionViolation";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::DegenerateKForm: return "DegenerateKForm";
    case ErrorKind::SplitFailure: return "SplitFailure";
    case ErrorKind::Unsatisfiable: return "Unsatisfiable";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::OnStokesDirection: return "OnStokesDirection";
    case ErrorKind::SingularLoop: return "SingularLoop";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace stokes
