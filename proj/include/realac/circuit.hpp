#ifndef REALAC_CIRCUIT_HPP
#define REALAC_CIRCUIT_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "realac/error.hpp"
#include "realac/rational.hpp"

namespace realac {

// Gate type codes. 1-6 are the core types, 7-12 the auxiliary ones that
// eliminate_aux_gates rewrites away.
enum GateType : int {
    kInput = 1,
    kConst = 2,
    kAdd = 3,
    kMul = 4,
    kSign = 5,
    kOutput = 6,
    kSub = 7,
    kEq = 8,
    kLt = 9,
    kGt = 10,
    kLe = 11,
    kGe = 12,
};

inline const char* gate_type_name(int gtype) {
    switch (gtype) {
        case kInput: return "input";
        case kConst: return "const";
        case kAdd: return "add";
        case kMul: return "mul";
        case kSign: return "sign";
        case kOutput: return "output";
        case kSub: return "sub";
        case kEq: return "eq";
        case kLt: return "lt";
        case kGt: return "gt";
        case kLe: return "le";
        case kGe: return "ge";
        default: return nullptr;
    }
}

inline int gate_type_code(const std::string& name) {
    for (int t = kInput; t <= kGe; ++t)
        if (name == gate_type_name(t)) return t;
    return 0;
}

struct Gate {
    std::int64_t id = 0;
    int gtype = 0;
    Rational constant;              // type 2
    std::int64_t input_index = 0;   // type 1, 1-based position in the input vector
    std::vector<std::int64_t> preds;
};

inline Gate make_input(std::int64_t id, std::int64_t index) {
    Gate g;
    g.id = id;
    g.gtype = kInput;
    g.input_index = index;
    return g;
}

inline Gate make_const(std::int64_t id, Rational value) {
    Gate g;
    g.id = id;
    g.gtype = kConst;
    g.constant = std::move(value);
    return g;
}

inline Gate make_gate(std::int64_t id, int gtype, std::vector<std::int64_t> preds) {
    Gate g;
    g.id = id;
    g.gtype = gtype;
    g.preds = std::move(preds);
    return g;
}

class Circuit {
public:
    std::int64_t input_count = 0;

    void add(Gate g) {
        index_[g.id] = gates_.size();
        gates_.push_back(std::move(g));
    }

    const std::vector<Gate>& gates() const { return gates_; }
    std::vector<Gate>& gates() { return gates_; }

    bool has(std::int64_t id) const { return index_.count(id) != 0; }

    const Gate* find(std::int64_t id) const {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &gates_[it->second];
    }
    Gate* find(std::int64_t id) {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &gates_[it->second];
    }

    const Gate& at(std::int64_t id) const {
        const Gate* g = find(id);
        if (!g) fail(ErrorCode::UnknownGate, "no gate with id " + std::to_string(id));
        return *g;
    }

    void reindex() {
        index_.clear();
        for (std::size_t i = 0; i < gates_.size(); ++i) index_[gates_[i].id] = i;
    }

    std::vector<std::int64_t> output_ids() const {
        std::vector<std::int64_t> out;
        for (const Gate& g : gates_)
            if (g.gtype == kOutput) out.push_back(g.id);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::int64_t> sorted_ids() const {
        std::vector<std::int64_t> ids;
        ids.reserve(gates_.size());
        for (const Gate& g : gates_) ids.push_back(g.id);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

private:
    std::vector<Gate> gates_;
    std::unordered_map<std::int64_t, std::size_t> index_;
};

namespace detail {

inline bool fixed_indegree(int gtype, std::size_t& want) {
    switch (gtype) {
        case kInput:
        case kConst: want = 0; return true;
        case kSign:
        case kOutput: want = 1; return true;
        case kSub:
        case kEq:
        case kLt:
        case kGt:
        case kLe:
        case kGe: want = 2; return true;
        default: return false;  // add/mul take any count >= 1
    }
}

// Structural checks only; input-index completeness is checked separately
// so induced subcircuits (which may drop inputs) stay evaluable.
inline std::vector<std::string> validate_core(const Circuit& C) {
    std::vector<std::string> bad;
    std::unordered_set<std::int64_t> ids;
    for (const Gate& g : C.gates()) {
        if (!ids.insert(g.id).second)
            bad.push_back("duplicate gate id " + std::to_string(g.id));
    }
    for (const Gate& g : C.gates()) {
        std::string where = "gate " + std::to_string(g.id);
        if (!gate_type_name(g.gtype)) {
            bad.push_back(where + ": unknown type code " + std::to_string(g.gtype));
            continue;
        }
        std::size_t want = 0;
        if (fixed_indegree(g.gtype, want)) {
            if (g.preds.size() != want)
                bad.push_back(where + ": " + gate_type_name(g.gtype) + " needs " +
                              std::to_string(want) + " predecessor(s), has " +
                              std::to_string(g.preds.size()));
        } else if (g.preds.empty()) {
            bad.push_back(where + ": " + gate_type_name(g.gtype) +
                          " needs at least one predecessor");
        }
        std::unordered_set<std::int64_t> seen;
        for (std::int64_t p : g.preds) {
            if (!C.has(p))
                bad.push_back(where + ": predecessor " + std::to_string(p) + " does not exist");
            if (!seen.insert(p).second)
                bad.push_back(where + ": predecessor " + std::to_string(p) + " repeated");
        }
        if (g.gtype == kInput && (g.input_index < 1 || g.input_index > C.input_count))
            bad.push_back(where + ": input index " + std::to_string(g.input_index) +
                          " outside 1.." + std::to_string(C.input_count));
    }
    // Cycle check via Kahn's algorithm.
    std::unordered_map<std::int64_t, std::size_t> indeg;
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> succs;
    for (const Gate& g : C.gates()) indeg[g.id] = 0;
    for (const Gate& g : C.gates())
        for (std::int64_t p : g.preds)
            if (C.has(p)) {
                ++indeg[g.id];
                succs[p].push_back(g.id);
            }
    std::deque<std::int64_t> ready;
    for (const auto& [id, d] : indeg)
        if (d == 0) ready.push_back(id);
    std::size_t done = 0;
    while (!ready.empty()) {
        std::int64_t id = ready.front();
        ready.pop_front();
        ++done;
        for (std::int64_t s : succs[id])
            if (--indeg[s] == 0) ready.push_back(s);
    }
    if (done != C.gates().size()) bad.push_back("circuit contains a cycle");
    return bad;
}

inline void require_core_valid(const Circuit& C) {
    auto bad = validate_core(C);
    if (!bad.empty()) fail(ErrorCode::InvalidCircuit, bad.front());
}

// Gate ids in a topological order (predecessors first).
inline std::vector<std::int64_t> topo_order(const Circuit& C) {
    std::unordered_map<std::int64_t, std::size_t> indeg;
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> succs;
    for (const Gate& g : C.gates()) indeg[g.id] = g.preds.size();
    for (const Gate& g : C.gates())
        for (std::int64_t p : g.preds) succs[p].push_back(g.id);
    std::deque<std::int64_t> ready;
    for (const Gate& g : C.gates())
        if (g.preds.empty()) ready.push_back(g.id);
    std::vector<std::int64_t> order;
    order.reserve(C.gates().size());
    while (!ready.empty()) {
        std::int64_t id = ready.front();
        ready.pop_front();
        order.push_back(id);
        for (std::int64_t s : succs[id])
            if (--indeg[s] == 0) ready.push_back(s);
    }
    return order;
}

inline std::unordered_map<std::int64_t, std::size_t> outdegrees(const Circuit& C) {
    std::unordered_map<std::int64_t, std::size_t> out;
    for (const Gate& g : C.gates()) out[g.id] = 0;
    for (const Gate& g : C.gates())
        for (std::int64_t p : g.preds) ++out[p];
    return out;
}

}  // namespace detail

// Gate ids with every predecessor ordered before its successors.
using detail::topo_order;

// Every invariant violation, including input-index completeness (exactly
// input_count input gates carrying each index once).
inline std::vector<std::string> validate(const Circuit& C) {
    std::vector<std::string> bad = detail::validate_core(C);
    std::map<std::int64_t, int> uses;
    for (const Gate& g : C.gates())
        if (g.gtype == kInput) ++uses[g.input_index];
    for (std::int64_t k = 1; k <= C.input_count; ++k) {
        int n = uses.count(k) ? uses[k] : 0;
        if (n != 1)
            bad.push_back("input index " + std::to_string(k) + " used " + std::to_string(n) +
                          " time(s)");
    }
    return bad;
}

inline std::vector<Rational> evaluate(const Circuit& C, const std::vector<Rational>& x) {
    detail::require_core_valid(C);
    if (static_cast<std::int64_t>(x.size()) != C.input_count)
        fail(ErrorCode::InvalidCircuit, "expected " + std::to_string(C.input_count) +
                                            " input value(s), got " + std::to_string(x.size()));
    std::unordered_map<std::int64_t, Rational> val;
    val.reserve(C.gates().size());
    for (std::int64_t id : detail::topo_order(C)) {
        const Gate& g = C.at(id);
        switch (g.gtype) {
            case kInput: val[id] = x[static_cast<std::size_t>(g.input_index - 1)]; break;
            case kConst: val[id] = g.constant; break;
            case kAdd: {
                Rational acc(0);
                for (std::int64_t p : g.preds) acc += val[p];
                val[id] = std::move(acc);
                break;
            }
            case kMul: {
                Rational acc(1);
                for (std::int64_t p : g.preds) acc *= val[p];
                val[id] = std::move(acc);
                break;
            }
            case kSign: val[id] = Rational(sign_of(val[g.preds[0]])); break;
            case kOutput: val[id] = val[g.preds[0]]; break;
            case kSub: val[id] = val[g.preds[0]] - val[g.preds[1]]; break;
            case kEq: val[id] = Rational(val[g.preds[0]] == val[g.preds[1]] ? 1 : 0); break;
            case kLt: val[id] = Rational(val[g.preds[0]] < val[g.preds[1]] ? 1 : 0); break;
            case kGt: val[id] = Rational(val[g.preds[0]] > val[g.preds[1]] ? 1 : 0); break;
            case kLe: val[id] = Rational(val[g.preds[0]] <= val[g.preds[1]] ? 1 : 0); break;
            case kGe: val[id] = Rational(val[g.preds[0]] >= val[g.preds[1]] ? 1 : 0); break;
            default: fail(ErrorCode::UnknownGate, "unknown gate type");
        }
    }
    std::vector<Rational> out;
    for (std::int64_t id : C.output_ids()) out.push_back(val[id]);
    return out;
}

inline std::size_t size(const Circuit& C) { return C.gates().size(); }

// Longest path (in edges) from an input gate; 0 when no gate is reachable
// from an input.
inline std::size_t depth(const Circuit& C) {
    detail::require_core_valid(C);
    std::unordered_map<std::int64_t, std::int64_t> dist;  // -1: not input-reachable
    std::size_t best = 0;
    for (std::int64_t id : detail::topo_order(C)) {
        const Gate& g = C.at(id);
        std::int64_t d = g.gtype == kInput ? 0 : -1;
        for (std::int64_t p : g.preds) {
            std::int64_t dp = dist[p];
            if (dp >= 0) d = std::max(d, dp + 1);
        }
        dist[id] = d;
        if (d > 0) best = std::max(best, static_cast<std::size_t>(d));
    }
    return best;
}

// Size with each input gate counted once per connection instead of once.
inline std::size_t tree_shape_size(const Circuit& C) {
    detail::require_core_valid(C);
    auto outdeg = detail::outdegrees(C);
    std::int64_t total = static_cast<std::int64_t>(C.gates().size());
    for (const Gate& g : C.gates())
        if (g.gtype == kInput)
            total += static_cast<std::int64_t>(outdeg[g.id]) - 1;
    return static_cast<std::size_t>(total);
}

// All gates with a path to root, root included. Input payloads and
// input_count are kept, so the fragment may use only some input indices.
inline Circuit induced_subcircuit(const Circuit& C, std::int64_t root) {
    if (!C.has(root)) fail(ErrorCode::UnknownGate, "no gate with id " + std::to_string(root));
    std::unordered_set<std::int64_t> keep;
    std::deque<std::int64_t> queue{root};
    keep.insert(root);
    while (!queue.empty()) {
        std::int64_t id = queue.front();
        queue.pop_front();
        for (std::int64_t p : C.at(id).preds)
            if (keep.insert(p).second) queue.push_back(p);
    }
    Circuit out;
    out.input_count = C.input_count;
    for (const Gate& g : C.gates())
        if (keep.count(g.id)) out.add(g);
    return out;
}

inline bool is_tree_like(const Circuit& C) {
    detail::require_core_valid(C);
    auto outdeg = detail::outdegrees(C);
    for (const Gate& g : C.gates())
        if (g.gtype != kInput && outdeg[g.id] > 1) return false;
    return true;
}

// True iff for every gate all input->gate paths have one length. Gates not
// reachable from an input (constant feeds) impose no constraint.
inline bool is_leveled(const Circuit& C) {
    detail::require_core_valid(C);
    std::unordered_map<std::int64_t, std::int64_t> level;  // -1: unconstrained
    for (std::int64_t id : detail::topo_order(C)) {
        const Gate& g = C.at(id);
        if (g.gtype == kInput) {
            level[id] = 0;
            continue;
        }
        std::int64_t l = -1;
        for (std::int64_t p : g.preds) {
            std::int64_t lp = level[p];
            if (lp < 0) continue;
            if (l < 0)
                l = lp + 1;
            else if (l != lp + 1)
                return false;
        }
        level[id] = l;
    }
    return true;
}

// Relabels gates 1..size in ascending id order, preserving topology.
inline Circuit renumber_dense(const Circuit& C) {
    std::unordered_map<std::int64_t, std::int64_t> fresh;
    std::int64_t next = 1;
    for (std::int64_t id : C.sorted_ids()) fresh[id] = next++;
    Circuit out;
    out.input_count = C.input_count;
    for (std::int64_t id : C.sorted_ids()) {
        Gate g = C.at(id);
        g.id = fresh[id];
        for (std::int64_t& p : g.preds) p = fresh[p];
        out.add(std::move(g));
    }
    return out;
}

// --- text format --------------------------------------------------------
//
//   inputs <n>
//   <id> <type-name> [const=<rational>|in=<k>] [preds=<id,id,...>]
//
// one gate per line in ascending id order; '#' starts a comment.

inline Circuit read_circuit(std::istream& in) {
    Circuit C;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_header) {
            std::int64_t n = -1;
            if (first != "inputs" || !(ls >> n) || n < 0)
                fail(ErrorCode::IoError,
                     "line " + std::to_string(lineno) + ": expected 'inputs <n>'");
            C.input_count = n;
            have_header = true;
            continue;
        }
        Gate g;
        try {
            g.id = std::stoll(first);
        } catch (...) {
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": bad gate id");
        }
        std::string type_word;
        if (!(ls >> type_word))
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": missing gate type");
        g.gtype = gate_type_code(type_word);
        if (g.gtype == 0)
            fail(ErrorCode::IoError,
                 "line " + std::to_string(lineno) + ": unknown gate type '" + type_word + "'");
        std::string field;
        while (ls >> field) {
            if (field.rfind("const=", 0) == 0) {
                g.constant = parse_rational(field.substr(6));
            } else if (field.rfind("in=", 0) == 0) {
                try {
                    g.input_index = std::stoll(field.substr(3));
                } catch (...) {
                    fail(ErrorCode::IoError,
                         "line " + std::to_string(lineno) + ": bad input index");
                }
            } else if (field.rfind("preds=", 0) == 0) {
                std::string list = field.substr(6);
                std::size_t start = 0;
                while (start < list.size()) {
                    std::size_t comma = list.find(',', start);
                    std::string tok = list.substr(start, comma == std::string::npos
                                                             ? std::string::npos
                                                             : comma - start);
                    try {
                        g.preds.push_back(std::stoll(tok));
                    } catch (...) {
                        fail(ErrorCode::IoError,
                             "line " + std::to_string(lineno) + ": bad predecessor list");
                    }
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
            } else {
                fail(ErrorCode::IoError,
                     "line " + std::to_string(lineno) + ": unexpected field '" + field + "'");
            }
        }
        if (C.has(g.id))
            fail(ErrorCode::IoError,
                 "line " + std::to_string(lineno) + ": duplicate gate id " + std::to_string(g.id));
        C.add(std::move(g));
    }
    if (!have_header) fail(ErrorCode::IoError, "missing 'inputs' header");
    return C;
}

inline void write_circuit(std::ostream& out, const Circuit& C) {
    out << "inputs " << C.input_count << "\n";
    for (std::int64_t id : C.sorted_ids()) {
        const Gate& g = C.at(id);
        out << id << ' ' << gate_type_name(g.gtype);
        if (g.gtype == kConst) out << " const=" << to_string(g.constant);
        if (g.gtype == kInput) out << " in=" << g.input_index;
        if (!g.preds.empty()) {
            out << " preds=";
            for (std::size_t i = 0; i < g.preds.size(); ++i) {
                if (i > 0) out << ',';
                out << g.preds[i];
            }
        }
        out << "\n";
    }
}

inline void write_dot(std::ostream& out, const Circuit& C) {
    out << "digraph circuit {\n  rankdir=BT;\n";
    for (std::int64_t id : C.sorted_ids()) {
        const Gate& g = C.at(id);
        out << "  g" << id << " [label=\"" << id << ":" << gate_type_name(g.gtype);
        if (g.gtype == kConst) out << ' ' << to_string(g.constant);
        if (g.gtype == kInput) out << " x" << g.input_index;
        out << "\"];\n";
    }
    for (std::int64_t id : C.sorted_ids()) {
        const Gate& g = C.at(id);
        bool ordered = g.gtype >= kSub;
        for (std::size_t i = 0; i < g.preds.size(); ++i) {
            out << "  g" << g.preds[i] << " -> g" << id;
            if (ordered) out << " [label=\"" << (i + 1) << "\"]";
            out << ";\n";
        }
    }
    out << "}\n";
}

}  // namespace realac

#endif
