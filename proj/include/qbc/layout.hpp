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

#pragma once

#include <string>
#include <vector>

namespace qbc {

enum class Owner { Alice, Bob, BobAncilla };

struct Register {
  std::string name;
  int dim = 0;
  Owner owner = Owner::Alice;
};

// Ordered list of named registers spanning a joint Hilbert space.
// Amplitude indexing is register-major: the first register varies slowest.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::vector<Register> regs);

  long total_dim() const { return total_; }
  int register_count() const { return static_cast<int>(regs_.size()); }
  const std::vector<Register>& registers() const { return regs_; }
  const Register& reg(int i) const;

  bool has(const std::string& name) const;
  // Position of a named register; throws LayoutError if absent.
  int index_of(const std::string& name) const;

  // Index stride of each register in the flat amplitude vector.
  const std::vector<long>& strides() const { return strides_; }

  // Positions of a set of register names, returned in layout order.
  // Rejects unknown and repeated names.
  std::vector<int> positions_of(const std::vector<std::string>& names) const;
  // Complement of positions_of(names), in layout order.
  std::vector<int> positions_not_of(const std::vector<std::string>& names) const;

  std::vector<std::string> names_owned_by(Owner owner) const;

  bool operator==(const RegisterLayout& other) const;

 private:
  std::vector<Register> regs_;
  std::vector<long> strides_;
  long total_ = 1;
};

// Concatenated layout for composite systems; register names must stay unique.
RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b);

}  // namespace qbc
