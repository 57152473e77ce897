// Copyright 2026 The qbclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbc/layout.hpp"

#include <algorithm>
#include <set>

#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
  if (regs_.empty()) throw LayoutError("layout: needs at least one register");
  std::set<std::string> seen;
  for (const auto& r : regs_) {
    if (r.name.empty()) throw LayoutError("layout: empty register name");
    if (!seen.insert(r.name).second)
      throw LayoutError("layout: duplicate register name '" + r.name + "'");
    if (r.dim < 1)
      throw LayoutError("layout: register '" + r.name + "' has dimension < 1");
    total_ *= r.dim;
    if (total_ > tol::max_total_dim)
      throw LayoutError("layout: total dimension exceeds cap " +
                        std::to_string(tol::max_total_dim));
  }
  strides_.resize(regs_.size());
  long s = 1;
  for (int i = static_cast<int>(regs_.size()) - 1; i >= 0; --i) {
    strides_[i] = s;
    s *= regs_[i].dim;
  }
}

const Register& RegisterLayout::reg(int i) const {
  if (i < 0 || i >= register_count())
    throw LayoutError("layout: register index out of range");
  return regs_[i];
}

bool RegisterLayout::has(const std::string& name) const {
  return std::any_of(regs_.begin(), regs_.end(),
                     [&](const Register& r) { return r.name == name; });
}

int RegisterLayout::index_of(const std::string& name) const {
  for (int i = 0; i < register_count(); ++i)
    if (regs_[i].name == name) return i;
  throw LayoutError("layout: no register named '" + name + "'");
}

std::vector<int> RegisterLayout::positions_of(
    const std::vector<std::string>& names) const {
  std::set<std::string> want(names.begin(), names.end());
  if (want.size() != names.size())
    throw LayoutError("layout: repeated register name in selection");
  std::vector<int> out;
  for (int i = 0; i < register_count(); ++i)
    if (want.count(regs_[i].name)) {
      out.push_back(i);
      want.erase(regs_[i].name);
    }
  if (!want.empty())
    throw LayoutError("layout: no register named '" + *want.begin() + "'");
  return out;
}

std::vector<int> RegisterLayout::positions_not_of(
    const std::vector<std::string>& names) const {
  auto in = positions_of(names);
  std::vector<int> out;
  for (int i = 0; i < register_count(); ++i)
    if (!std::binary_search(in.begin(), in.end(), i)) out.push_back(i);
  return out;
}

std::vector<std::string> RegisterLayout::names_owned_by(Owner owner) const {
  std::vector<std::string> out;
  for (const auto& r : regs_)
    if (r.owner == owner) out.push_back(r.name);
  return out;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (regs_.size() != other.regs_.size()) return false;
  for (size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].name != other.regs_[i].name || regs_[i].dim != other.regs_[i].dim ||
        regs_[i].owner != other.regs_[i].owner)
      return false;
  }
  return true;
}

RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b) {
  std::vector<Register> regs = a.registers();
  regs.insert(regs.end(), b.registers().begin(), b.registers().end());
  return RegisterLayout(std::move(regs));  // re-validates, catches collisions
}

}  // namespace qbc
