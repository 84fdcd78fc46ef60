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
/**
 * @file
 * Filter circuit registry.
 *
 * Every layout lives in kFilterLayouts below as a list of steps over four
 * block-local data wires (0..3). A step is either a layer of single-qubit
 * rotations on all four wires or a sequence of controlled rotations given
 * as (control, target) pairs. Parameters are numbered in step order.
 * Correcting a layout means editing this table only; build_template()
 * handles wire placement, encodings, the CPHASE fan-in and channel
 * overwrite.
 *
 * Placement:
 *   - U1/U2, single channel: 5 qubits, wire 0 ancilla (readout), data 1..4.
 *   - C13..C19, single channel: 4 qubits, data 0..3, readout wire 0.
 *   - channel overwrite (all kinds): 5 qubits, ancilla 0, data 1..4, three
 *     rounds of {RX encode channel c -> filter with private parameters ->
 *     fan-in}.
 *
 * The fan-in is H(ancilla), CPHASE(data_i -> ancilla) for i = 1..4,
 * H(ancilla). With the default phase pi the ancilla <Z> after one round is
 * the parity <Z Z Z Z> of the data wires.
 *
 * Encoding slots take the 2x2 window row-major (TL, TR, BL, BR) onto data
 * wires in order; channel c uses slots 4c..4c+3.
 */
#include "hqcnn/templates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hqcnn::templates {

using qsim::GateKind;
using qsim::GateOp;
using qsim::SlotKind;

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

struct Step {
    /// Rotation applied; for a layer it is single-qubit, for a ring/chain
    /// it is the two-qubit controlled gate.
    GateKind gate;
    /// Empty for a layer on all four wires.
    std::vector<Pair> pairs;
};

struct FilterLayout {
    TemplateKind kind;
    std::vector<Step> steps;
    /// Whether the block is followed by the CPHASE fan-in in single mode.
    bool has_ancilla;
};

const std::vector<Pair> kU1Chain = {{0, 1}, {1, 2}, {2, 3}};
const std::vector<Pair> kU2Ring = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
const std::vector<Pair> kRingA = {{3, 0}, {0, 1}, {1, 2}, {2, 3}};
const std::vector<Pair> kRingB = {{3, 2}, {2, 1}, {1, 0}, {0, 3}};

const std::vector<FilterLayout> kFilterLayouts = {
    {TemplateKind::U1_CRX, {{GateKind::CRX, kU1Chain}}, true},
    {TemplateKind::U1_CROT, {{GateKind::CROT, kU1Chain}}, true},
    {TemplateKind::U2_CRX, {{GateKind::CRX, kU2Ring}}, true},
    {TemplateKind::U2_CROT, {{GateKind::CROT, kU2Ring}}, true},
    {TemplateKind::C13,
     {{GateKind::RY, {}},
      {GateKind::CRZ, kRingA},
      {GateKind::RY, {}},
      {GateKind::CRZ, kRingB}},
     false},
    {TemplateKind::C14,
     {{GateKind::RY, {}},
      {GateKind::CRX, kRingA},
      {GateKind::RY, {}},
      {GateKind::CRX, kRingB}},
     false},
    {TemplateKind::C18,
     {{GateKind::RX, {}}, {GateKind::RZ, {}}, {GateKind::CRZ, kRingA}},
     false},
    {TemplateKind::C19,
     {{GateKind::RX, {}}, {GateKind::RZ, {}}, {GateKind::CRX, kRingA}},
     false},
};

const FilterLayout &layoutOf(TemplateKind kind) {
    for (const auto &l : kFilterLayouts) {
        if (l.kind == kind) {
            return l;
        }
    }
    throw std::invalid_argument("unknown template kind");
}

constexpr std::size_t kAncilla = 0;
constexpr std::size_t kWindow = 4;

class Builder {
  public:
    explicit Builder(CircuitTemplate &t) : t_(t) {}

    void encode(std::span<const std::size_t, kWindow> wires,
                std::size_t slot_offset) {
        for (std::size_t i = 0; i < kWindow; ++i) {
            t_.gates.push_back(
                {GateKind::RX, {wires[i]}, {slot_offset + i}, SlotKind::Encoding});
        }
        t_.n_encoding = std::max(t_.n_encoding, slot_offset + kWindow);
    }

    void filter(const FilterLayout &layout,
                std::span<const std::size_t, kWindow> wires) {
        for (const auto &step : layout.steps) {
            if (step.pairs.empty()) {
                for (std::size_t i = 0; i < kWindow; ++i) {
                    t_.gates.push_back({step.gate, {wires[i]},
                                        nextSlots(1), SlotKind::Trainable});
                }
                continue;
            }
            for (const auto &[c, tgt] : step.pairs) {
                t_.gates.push_back({step.gate,
                                    {wires[c], wires[tgt]},
                                    nextSlots(qsim::arity(step.gate)),
                                    SlotKind::Trainable});
            }
        }
    }

    void cphaseFanIn(std::span<const std::size_t, kWindow> wires,
                     bool trainable) {
        // Phase kickback: without the H pair the ancilla stays |0> and the
        // readout is identically +1.
        t_.gates.push_back({GateKind::H, {kAncilla}, {}, SlotKind::Fixed});
        for (std::size_t i = 0; i < kWindow; ++i) {
            if (trainable) {
                t_.gates.push_back({GateKind::CPHASE, {wires[i], kAncilla},
                                    nextSlots(1), SlotKind::Trainable});
            } else {
                t_.gates.push_back({GateKind::CPHASE, {wires[i], kAncilla},
                                    {0}, SlotKind::Fixed});
            }
        }
        t_.gates.push_back({GateKind::H, {kAncilla}, {}, SlotKind::Fixed});
    }

  private:
    std::vector<std::size_t> nextSlots(std::size_t n) {
        std::vector<std::size_t> s(n);
        for (auto &x : s) {
            x = t_.n_trainable++;
        }
        return s;
    }

    CircuitTemplate &t_;
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string_view to_string(TemplateKind kind) {
    switch (kind) {
    case TemplateKind::U1_CRX: return "U1_CRX";
    case TemplateKind::U1_CROT: return "U1_CROT";
    case TemplateKind::U2_CRX: return "U2_CRX";
    case TemplateKind::U2_CROT: return "U2_CROT";
    case TemplateKind::C13: return "C13";
    case TemplateKind::C14: return "C14";
    case TemplateKind::C18: return "C18";
    case TemplateKind::C19: return "C19";
    }
    return "?";
}

std::string_view to_string(ChannelMode mode) {
    return mode == ChannelMode::Single ? "single" : "channel_overwrite";
}

std::optional<TemplateKind> parse_kind(std::string_view name) {
    std::string key = lower(name);
    std::erase(key, '_');
    for (auto k : kAllKinds) {
        std::string candidate = lower(to_string(k));
        std::erase(candidate, '_');
        if (candidate == key) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<ChannelMode> parse_mode(std::string_view name) {
    const std::string key = lower(name);
    if (key == "single") {
        return ChannelMode::Single;
    }
    if (key == "channel_overwrite" || key == "co" || key == "all") {
        return ChannelMode::ChannelOverwrite;
    }
    return std::nullopt;
}

std::size_t filter_parameter_count(TemplateKind kind) {
    std::size_t n = 0;
    for (const auto &step : layoutOf(kind).steps) {
        n += step.pairs.empty() ? kWindow
                                : step.pairs.size() * qsim::arity(step.gate);
    }
    return n;
}

CircuitTemplate build_template(TemplateKind kind, ChannelMode mode,
                               const BuildOptions &options) {
    const FilterLayout &layout = layoutOf(kind);
    CircuitTemplate t;
    t.name = std::string(to_string(kind)) + "/" + std::string(to_string(mode));
    t.readout_wire = kAncilla;
    t.fixed_values = {std::numbers::pi};
    Builder b(t);

    static constexpr std::array<std::size_t, kWindow> kAncillaData = {1, 2, 3, 4};
    static constexpr std::array<std::size_t, kWindow> kBareData = {0, 1, 2, 3};

    if (mode == ChannelMode::Single) {
        if (layout.has_ancilla) {
            t.n_qubits = 5;
            b.encode(kAncillaData, 0);
            b.filter(layout, kAncillaData);
            b.cphaseFanIn(kAncillaData, options.trainable_cphase);
        } else {
            t.n_qubits = 4;
            b.encode(kBareData, 0);
            b.filter(layout, kBareData);
        }
    } else {
        t.n_qubits = 5;
        for (std::size_t c = 0; c < 3; ++c) {
            b.encode(kAncillaData, c * kWindow);
            b.filter(layout, kAncillaData);
            b.cphaseFanIn(kAncillaData, options.trainable_cphase);
        }
    }
    const bool uses_fixed =
        std::any_of(t.gates.begin(), t.gates.end(), [](const GateOp &g) {
            return g.slot_kind == SlotKind::Fixed && !g.param_slots.empty();
        });
    if (!uses_fixed) {
        t.fixed_values.clear();
    }
    qsim::validate(t);
    return t;
}

std::vector<TemplateId> list_templates() {
    std::vector<TemplateId> out;
    for (auto mode : {ChannelMode::Single, ChannelMode::ChannelOverwrite}) {
        for (auto k : kAllKinds) {
            out.push_back({k, mode});
        }
    }
    return out;
}

std::string to_text(const CircuitTemplate &tmpl) {
    std::ostringstream os;
    os.precision(17);
    os << "template " << tmpl.name << "\n"
       << "qubits " << tmpl.n_qubits << "\n"
       << "trainable " << tmpl.n_trainable << "\n"
       << "encoding " << tmpl.n_encoding << "\n"
       << "readout " << tmpl.readout_wire << "\n"
       << "fixed";
    for (double v : tmpl.fixed_values) {
        os << ' ' << v;
    }
    os << "\n";
    for (const auto &g : tmpl.gates) {
        os << "gate " << qsim::to_string(g.kind) << ' '
           << qsim::to_string(g.slot_kind);
        for (auto s : g.param_slots) {
            os << ' ' << s;
        }
        os << " wires";
        for (auto w : g.wires) {
            os << ' ' << w;
        }
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

CircuitTemplate parse_text(std::string_view text) {
    CircuitTemplate t;
    std::istringstream in{std::string(text)};
    std::string line;
    bool ended = false;
    std::size_t lineno = 0;
    auto fail = [&](const std::string &what) {
        throw std::invalid_argument("template text line " +
                                    std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key.starts_with('#')) {
            continue;
        }
        if (key == "template") {
            ls >> t.name;
        } else if (key == "qubits") {
            ls >> t.n_qubits;
        } else if (key == "trainable") {
            ls >> t.n_trainable;
        } else if (key == "encoding") {
            ls >> t.n_encoding;
        } else if (key == "readout") {
            ls >> t.readout_wire;
        } else if (key == "fixed") {
            double v;
            while (ls >> v) {
                t.fixed_values.push_back(v);
            }
        } else if (key == "gate") {
            std::string kind, slot;
            ls >> kind >> slot;
            auto gk = qsim::parse_gate_kind(kind);
            auto sk = qsim::parse_slot_kind(slot);
            if (!gk || !sk) {
                fail("bad gate or slot kind");
            }
            GateOp g{*gk, {}, {}, *sk};
            std::string tok;
            bool in_wires = false;
            while (ls >> tok) {
                if (tok == "wires") {
                    in_wires = true;
                    continue;
                }
                const auto v = static_cast<std::size_t>(std::stoul(tok));
                (in_wires ? g.wires : g.param_slots).push_back(v);
            }
            t.gates.push_back(std::move(g));
        } else if (key == "end") {
            ended = true;
            break;
        } else {
            fail("unknown directive '" + key + "'");
        }
        if (ls.fail() && !ls.eof()) {
            fail("malformed value");
        }
    }
    if (!ended) {
        fail("missing 'end'");
    }
    qsim::validate(t);
    return t;
}

} // namespace hqcnn::templates
