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

#ifndef HEXQEC_NOISE_MODEL_HPP
#define HEXQEC_NOISE_MODEL_HPP

#include <string>
#include <string_view>

#include "hexqec/circuit.hpp"

namespace hexqec {

/// Noise bias. Infinity is a distinct state, not a large number.
class Bias {
  public:
    Bias() = default;
    explicit Bias(double eta);
    static Bias infinite();
    /// Accepts a positive number or "inf".
    static Bias parse(std::string_view text);

    bool is_infinite() const { return infinite_; }
    double value() const;  // throws when infinite
    std::string str() const;

    friend bool operator==(const Bias&, const Bias&) = default;

  private:
    double eta_ = 0.5;
    bool infinite_ = false;
};

struct PauliRates {
    double px = 0;
    double py = 0;
    double pz = 0;
    double total() const { return px + py + pz; }
};

/// pX = pY = p / (2 (eta + 1)), pZ = p eta / (eta + 1).
PauliRates pauli_rates(double p, Bias eta);

enum class IdleMode { PerCycle, PerRound };

struct BiasedNoise {
    double p = 0;
    Bias eta;
    IdleMode idle = IdleMode::PerCycle;

    PauliRates rates() const { return pauli_rates(p, eta); }
};

IdleMode parse_idle_mode(std::string_view text);

/// Returns a copy of `circuit` with a noise instruction after every gate,
/// preparation and measurement, and a data-idle channel at each cycle marker
/// (or only at the first cycle of each round in PerRound mode).
Circuit apply_noise(const Circuit& circuit, const BiasedNoise& model);

}  // namespace hexqec

#endif
