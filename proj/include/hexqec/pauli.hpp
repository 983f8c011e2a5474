// Copyright 2026 hexqec contributors
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

#ifndef HEXQEC_PAULI_HPP
#define HEXQEC_PAULI_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace hexqec {

/// Single-qubit Pauli in symplectic encoding: bit 0 is the X component,
/// bit 1 the Z component. Products are taken up to phase.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr bool has_x(Pauli p) { return (static_cast<std::uint8_t>(p) & 1u) != 0; }
constexpr bool has_z(Pauli p) { return (static_cast<std::uint8_t>(p) & 2u) != 0; }

constexpr Pauli pauli_from_bits(bool x, bool z) {
    return static_cast<Pauli>((x ? 1u : 0u) | (z ? 2u : 0u));
}

constexpr Pauli operator*(Pauli a, Pauli b) {
    return static_cast<Pauli>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr bool anticommutes(Pauli a, Pauli b) {
    return ((has_x(a) && has_z(b)) != (has_z(a) && has_x(b)));
}

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Sparse Pauli operator keyed by qubit id. Identity factors are never stored.
class PauliString {
  public:
    PauliString() = default;

    void set(std::uint32_t qubit, Pauli p);
    Pauli at(std::uint32_t qubit) const;
    std::size_t weight() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::map<std::uint32_t, Pauli>& terms() const { return terms_; }

    bool commutes_with(const PauliString& other) const;
    PauliString& operator*=(const PauliString& other);

    /// e.g. "X1 Z16 X28".
    std::string str() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    std::map<std::uint32_t, Pauli> terms_;
};

}  // namespace hexqec

#endif
