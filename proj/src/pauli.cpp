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

#include "hexqec/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace hexqec {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

void PauliString::set(std::uint32_t qubit, Pauli p) {
    if (p == Pauli::I) {
        terms_.erase(qubit);
    } else {
        terms_[qubit] = p;
    }
}

Pauli PauliString::at(std::uint32_t qubit) const {
    auto it = terms_.find(qubit);
    return it == terms_.end() ? Pauli::I : it->second;
}

bool PauliString::commutes_with(const PauliString& other) const {
    const auto& small = terms_.size() <= other.terms_.size() ? *this : other;
    const auto& large = terms_.size() <= other.terms_.size() ? other : *this;
    bool odd = false;
    for (const auto& [q, p] : small.terms_) {
        if (anticommutes(p, large.at(q))) {
            odd = !odd;
        }
    }
    return !odd;
}

PauliString& PauliString::operator*=(const PauliString& other) {
    for (const auto& [q, p] : other.terms_) {
        set(q, at(q) * p);
    }
    return *this;
}

std::string PauliString::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [q, p] : terms_) {
        if (!first) {
            out << ' ';
        }
        first = false;
        out << pauli_char(p) << q;
    }
    return out.str();
}

}  // namespace hexqec
