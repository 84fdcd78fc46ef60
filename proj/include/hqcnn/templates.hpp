// Copyright 2026 The hqcnn Authors
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

#include "hqcnn/qsim/circuit.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqcnn::templates {

using qsim::CircuitTemplate;

enum class TemplateKind { U1_CRX, U1_CROT, U2_CRX, U2_CROT, C13, C14, C18, C19 };
enum class ChannelMode { Single, ChannelOverwrite };

inline constexpr TemplateKind kAllKinds[] = {
    TemplateKind::U1_CRX, TemplateKind::U1_CROT, TemplateKind::U2_CRX,
    TemplateKind::U2_CROT, TemplateKind::C13,   TemplateKind::C14,
    TemplateKind::C18,    TemplateKind::C19};

struct TemplateId {
    TemplateKind kind;
    ChannelMode mode;
    bool operator==(const TemplateId &) const = default;
};

struct BuildOptions {
    /// Make the CPHASE fan-in angles trainable (one slot per gate, appended
    /// after the filter parameters) instead of fixed at pi.
    bool trainable_cphase = false;
};

/// "U1_CRX", "C14", ...
std::string_view to_string(TemplateKind kind);
std::string_view to_string(ChannelMode mode);
/// Accepts "U1_CRX" and the table spelling "U1CRX"; case-insensitive.
std::optional<TemplateKind> parse_kind(std::string_view name);
std::optional<ChannelMode> parse_mode(std::string_view name);

/// Throws std::invalid_argument for a kind outside the enum.
CircuitTemplate build_template(TemplateKind kind, ChannelMode mode,
                               const BuildOptions &options = {});

/// All 8 kinds x 2 channel modes.
std::vector<TemplateId> list_templates();

/// Trainable parameters of one filter block (no CPHASE fan-in).
std::size_t filter_parameter_count(TemplateKind kind);

/**
 * Text form, one directive per line:
 *
 *     template <name>
 *     qubits <n>
 *     trainable <n>
 *     encoding <n>
 *     readout <wire>
 *     fixed <v0> <v1> ...
 *     gate <KIND> <train|enc|fixed> <slot...> wires <w...>
 *     end
 */
std::string to_text(const CircuitTemplate &tmpl);
CircuitTemplate parse_text(std::string_view text);

} // namespace hqcnn::templates
