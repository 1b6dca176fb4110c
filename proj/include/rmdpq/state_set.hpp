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

#ifndef RMDPQ_STATE_SET_HPP_
#define RMDPQ_STATE_SET_HPP_

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace rmdpq {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;  // index into the owning state's action menu

// Set of states over a fixed universe {0, ..., n-1}. Iteration order is
// always ascending, which keeps every fixpoint in the library deterministic.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : bits_(universe, false) {}
  StateSet(std::size_t universe, std::initializer_list<StateId> ids)
      : bits_(universe, false) {
    for (StateId s : ids) insert(s);
  }
  StateSet(std::size_t universe, const std::vector<StateId>& ids)
      : bits_(universe, false) {
    for (StateId s : ids) insert(s);
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(StateId s) const {
    return s < bits_.size() && bits_[s];
  }

  void insert(StateId s) {
    if (s >= bits_.size()) throw std::out_of_range("StateSet::insert: id out of range");
    if (!bits_[s]) {
      bits_[s] = true;
      ++count_;
    }
  }

  void erase(StateId s) {
    if (s < bits_.size() && bits_[s]) {
      bits_[s] = false;
      --count_;
    }
  }

  std::vector<StateId> elements() const {
    std::vector<StateId> out;
    out.reserve(count_);
    for (StateId s = 0; s < bits_.size(); ++s)
      if (bits_[s]) out.push_back(s);
    return out;
  }

  StateSet set_union(const StateSet& o) const {
    StateSet r = *this;
    for (StateId s = 0; s < o.bits_.size(); ++s)
      if (o.bits_[s]) r.insert(s);
    return r;
  }

  StateSet set_minus(const StateSet& o) const {
    StateSet r = *this;
    for (StateId s = 0; s < bits_.size(); ++s)
      if (bits_[s] && o.contains(s)) r.erase(s);
    return r;
  }

  StateSet set_intersect(const StateSet& o) const {
    StateSet r(bits_.size());
    for (StateId s = 0; s < bits_.size(); ++s)
      if (bits_[s] && o.contains(s)) r.insert(s);
    return r;
  }

  bool is_subset_of(const StateSet& o) const {
    for (StateId s = 0; s < bits_.size(); ++s)
      if (bits_[s] && !o.contains(s)) return false;
    return true;
  }

  bool intersects(const StateSet& o) const {
    for (StateId s = 0; s < bits_.size(); ++s)
      if (bits_[s] && o.contains(s)) return true;
    return false;
  }

  bool operator==(const StateSet& o) const {
    if (count_ != o.count_) return false;
    for (StateId s = 0; s < bits_.size(); ++s)
      if (bits_[s] != (s < o.bits_.size() && o.bits_[s])) return false;
    return true;
  }
  bool operator!=(const StateSet& o) const { return !(*this == o); }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

}  // namespace rmdpq

#endif  // RMDPQ_STATE_SET_HPP_
