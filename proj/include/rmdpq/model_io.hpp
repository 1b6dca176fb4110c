// Copyright 2026 The rmdpq Authors
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

#ifndef RMDPQ_MODEL_IO_HPP_
#define RMDPQ_MODEL_IO_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rmdpq/model.hpp"

namespace rmdpq {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Native "rmdpq-1" JSON model format: lossless for faces, labels and
// priorities, rationals as "p/q" strings, keys sorted, so saving is
// byte-deterministic. Only live states are written; loading renumbers.
void save_model(const Rmdp& model, std::ostream& out);
Rmdp load_model(std::istream& in);

void save_model_file(const Rmdp& model, const std::string& path);
Rmdp load_model_file(const std::string& path);

// Explicit-format ingestion: .tra lines "src action dst prob" and .lab lines
// "state label". Probabilities may be decimals or p/q rationals and must sum
// to exactly 1 per (state, action). Every center is wrapped in the given
// uniform-radius ball. ParseError messages carry 1-based line numbers.
Rmdp ingest_explicit(std::istream& tra, std::istream& lab, const LNorm& norm,
                     const Rational& radius, bool support_restricted);

// Writers for the same explicit format (round-trip support).
void write_tra(const Rmdp& model, std::ostream& out);
void write_lab(const Rmdp& model, std::ostream& out);

}  // namespace rmdpq

#endif  // RMDPQ_MODEL_IO_HPP_
