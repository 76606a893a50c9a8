#include "dendron/operad.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dendron {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Operad
// ---------------------------------------------------------------------------

std::string Operad::profile_key(const std::vector<std::string>& inputs,
                                const std::string& output) {
    return join(inputs, ",") + ";" + output;
}

Operad::Operad(std::string name, std::vector<std::string> colours, std::vector<Op> ops,
               std::map<std::string, int> units,
               std::function<int(const Operad&, int, const std::vector<int>&)> gamma,
               std::function<int(const Operad&, int, const std::vector<int>&)> reorder)
    : name_(std::move(name)),
      colours_(std::move(colours)),
      ops_(std::move(ops)),
      units_(std::move(units)),
      gamma_(std::move(gamma)),
      reorder_(std::move(reorder)) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (!op_index_.emplace(ops_[i].name, static_cast<int>(i)).second)
            throw InvalidInput("duplicate operation name: " + ops_[i].name);
        profile_index_[profile_key(ops_[i].inputs, ops_[i].output)].push_back(
            static_cast<int>(i));
        max_arity_ = std::max(max_arity_, ops_[i].arity());
    }
    for (const auto& c : colours_)
        if (!units_.count(c)) throw InvalidInput("missing unit for colour: " + c);
}

int Operad::op_by_name(const std::string& n) const {
    auto it = op_index_.find(n);
    return it == op_index_.end() ? -1 : it->second;
}

const std::vector<int>& Operad::ops_with_profile(const std::vector<std::string>& inputs,
                                                 const std::string& output) const {
    static const std::vector<int> empty;
    auto it = profile_index_.find(profile_key(inputs, output));
    return it == profile_index_.end() ? empty : it->second;
}

std::vector<int> Operad::ops_with_output(const std::string& output, int arity) const {
    std::vector<int> out;
    for (int i = 0; i < num_operations(); ++i)
        if (ops_[i].output == output && ops_[i].arity() == arity) out.push_back(i);
    return out;
}

int Operad::unit(const std::string& colour) const {
    auto it = units_.find(colour);
    if (it == units_.end()) throw InvalidInput("unknown colour: " + colour);
    return it->second;
}

int Operad::gamma(int op, const std::vector<int>& args) const {
    const Op& p = ops_[op];
    if (static_cast<int>(args.size()) != p.arity())
        throw InvalidInput("gamma arity mismatch");
    for (std::size_t i = 0; i < args.size(); ++i)
        if (ops_[args[i]].output != p.inputs[i])
            throw InvalidInput("gamma colour mismatch at slot " + std::to_string(i));
    return gamma_(*this, op, args);
}

int Operad::reorder(int op, const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != ops_[op].arity())
        throw InvalidInput("reorder arity mismatch");
    return reorder_(*this, op, perm);
}

std::string Operad::validate(int composite_budget) const {
    for (int p = 0; p < num_operations(); ++p) {
        const Op& op = ops_[p];
        std::vector<int> units;
        for (const auto& c : op.inputs) units.push_back(unit(c));
        int right = gamma_(*this, p, units);
        if (right >= 0 && right != p) return "right unit law fails at " + op.name;
        int left = gamma_(*this, unit(op.output), {p});
        if (left >= 0 && left != p) return "left unit law fails at " + op.name;
    }
    long long budget = composite_budget;
    for (int p = 0; p < num_operations() && budget > 0; ++p) {
        int n = ops_[p].arity();
        if (n > 4) continue;
        for (const auto& pi : all_permutations(n)) {
            for (const auto& rho : all_permutations(n)) {
                if (budget-- <= 0) break;
                int a = reorder_(*this, p, pi);
                if (a < 0) continue;
                int lhs = reorder_(*this, a, rho);
                int rhs = reorder_(*this, p, compose_perm(pi, rho));
                if (lhs != rhs) return "action composition law fails at " + ops_[p].name;
            }
        }
    }
    // associativity: gamma(gamma(a;b)γ;units) vs nested, on small composites
    budget = composite_budget;
    std::string failure;
    for (int a = 0; a < num_operations() && budget > 0 && failure.empty(); ++a) {
        int n = ops_[a].arity();
        if (n == 0 || n > 2) continue;
        std::vector<std::vector<int>> slot_bs(n);
        for (int s = 0; s < n; ++s)
            for (int b = 0; b < num_operations(); ++b)
                if (ops_[b].output == ops_[a].inputs[s] && ops_[b].arity() <= 2)
                    slot_bs[s].push_back(b);
        std::vector<int> pick(n, 0);
        std::function<void(int)> rec = [&](int s) {
            if (budget <= 0 || !failure.empty()) return;
            if (s == n) {
                std::vector<int> bs(pick.begin(), pick.end());
                int ab = gamma_(*this, a, bs);
                if (ab < 0) return;
                std::vector<int> cs;
                for (int b : bs)
                    for (const auto& c : ops_[b].inputs) cs.push_back(unit(c));
                if (!cs.empty()) {
                    --budget;
                    int lhs = gamma_(*this, ab, cs);
                    std::vector<int> inner;
                    std::size_t off = 0;
                    for (int b : bs) {
                        std::vector<int> block(cs.begin() + off,
                                               cs.begin() + off + ops_[b].arity());
                        off += ops_[b].arity();
                        inner.push_back(gamma_(*this, b, block));
                    }
                    int rhs = gamma_(*this, a, inner);
                    if (lhs >= 0 && rhs >= 0 && lhs != rhs)
                        failure = "associativity fails at " + ops_[a].name;
                }
                return;
            }
            for (int b : slot_bs[s]) {
                pick[s] = b;
                rec(s + 1);
            }
        };
        rec(0);
    }
    return failure;
}

Operad::SigmaFreeness Operad::sigma_freeness() const {
    SigmaFreeness out;
    for (int p = 0; p < num_operations(); ++p) {
        int n = ops_[p].arity();
        if (n < 2 || n > 5) continue;
        for (const auto& pi : all_permutations(n)) {
            bool is_id = true;
            for (int k = 0; k < n; ++k)
                if (pi[k] != k) is_id = false;
            if (is_id) continue;
            std::vector<std::string> permuted(n);
            for (int k = 0; k < n; ++k) permuted[k] = ops_[p].inputs[pi[k]];
            if (permuted != ops_[p].inputs) continue;
            if (reorder_(*this, p, pi) == p) {
                out.is_free = false;
                std::ostringstream os;
                os << ops_[p].name << " fixed by permutation (";
                for (int k = 0; k < n; ++k) os << (k ? "," : "") << pi[k];
                os << ")";
                out.witness = os.str();
                return out;
            }
        }
    }
    return out;
}

json Operad::to_json(int table_arity_cap) const {
    json j;
    j["name"] = name_;
    j["colours"] = colours_;
    json ops = json::array();
    for (const auto& op : ops_)
        ops.push_back({{"name", op.name}, {"inputs", op.inputs}, {"output", op.output}});
    j["operations"] = ops;
    json units = json::object();
    for (const auto& [c, u] : units_) units[c] = ops_[u].name;
    j["units"] = units;
    json table = json::array();
    for (int p = 0; p < num_operations(); ++p) {
        if (ops_[p].arity() == 0 || ops_[p].arity() > table_arity_cap) continue;
        std::vector<std::vector<int>> slots(ops_[p].arity());
        for (int s = 0; s < ops_[p].arity(); ++s)
            for (int b = 0; b < num_operations(); ++b)
                if (ops_[b].output == ops_[p].inputs[s] &&
                    ops_[b].arity() <= table_arity_cap)
                    slots[s].push_back(b);
        std::vector<int> pick(ops_[p].arity());
        std::function<void(int)> rec = [&](int s) {
            if (s == ops_[p].arity()) {
                int r = gamma_(*this, p, pick);
                if (r >= 0) {
                    json entry;
                    entry["op"] = ops_[p].name;
                    json args = json::array();
                    for (int b : pick) args.push_back(ops_[b].name);
                    entry["args"] = args;
                    entry["result"] = ops_[r].name;
                    table.push_back(entry);
                }
                return;
            }
            for (int b : slots[s]) {
                pick[s] = b;
                rec(s + 1);
            }
        };
        rec(0);
    }
    j["gamma"] = table;
    return j;
}

// ---------------------------------------------------------------------------
// Concrete operads
// ---------------------------------------------------------------------------

namespace {

std::string perm_word_name(const std::vector<int>& word) {
    std::ostringstream os;
    os << "s";
    for (int v : word) os << (v + 1) << ".";
    return os.str();
}

}  // namespace

Operad ass_operad(int max_arity) {
    std::vector<Operad::Op> ops;
    std::map<std::string, int> by_name;
    // arity-n operations are the orders in which n inputs multiply: word[j] is
    // the input placed in slot j of the product
    for (int n = 1; n <= max_arity; ++n) {
        for (const auto& word : all_permutations(n)) {
            Operad::Op op;
            op.name = perm_word_name(word);
            op.inputs.assign(n, "c");
            op.output = "c";
            by_name[op.name] = static_cast<int>(ops.size());
            ops.push_back(op);
        }
    }
    auto word_of = [](const Operad& P, int op) {
        std::vector<int> w;
        const std::string& nm = P.operation(op).name;
        std::string cur;
        for (std::size_t i = 1; i < nm.size(); ++i) {
            if (nm[i] == '.') {
                w.push_back(std::stoi(cur) - 1);
                cur.clear();
            } else
                cur += nm[i];
        }
        return w;
    };
    auto gamma = [word_of](const Operad& P, int op, const std::vector<int>& args) -> int {
        std::vector<int> a = word_of(P, op);
        std::vector<std::vector<int>> blocks;
        std::vector<int> offset = {0};
        for (int b : args) {
            blocks.push_back(word_of(P, b));
            offset.push_back(offset.back() + static_cast<int>(blocks.back().size()));
        }
        std::vector<int> result;
        for (int slot : a)
            for (int v : blocks[slot]) result.push_back(offset[slot] + v);
        if (static_cast<int>(result.size()) > P.max_arity()) return -1;
        return P.op_by_name(perm_word_name(result));
    };
    auto reorder = [word_of](const Operad& P, int op, const std::vector<int>& perm) -> int {
        // the k-th input of the result is input perm[k] of op, so the product
        // word conjugates by the inverse
        std::vector<int> w = word_of(P, op);
        std::vector<int> inv = invert_perm(perm);
        std::vector<int> res(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) res[j] = inv[w[j]];
        return P.op_by_name(perm_word_name(res));
    };
    std::map<std::string, int> units = {{"c", by_name.at("s1.")}};
    return Operad("ass", {"c"}, std::move(ops), std::move(units), gamma, reorder);
}

Operad com_operad(int max_arity) {
    std::vector<Operad::Op> ops;
    for (int n = 1; n <= max_arity; ++n) {
        Operad::Op op;
        op.name = "m" + std::to_string(n);
        op.inputs.assign(n, "c");
        op.output = "c";
        ops.push_back(op);
    }
    auto gamma = [](const Operad& P, int op, const std::vector<int>& args) -> int {
        int total = 0;
        for (int b : args) total += P.operation(b).arity();
        (void)op;
        if (total > P.max_arity() || total == 0) return -1;
        return P.op_by_name("m" + std::to_string(total));
    };
    auto reorder = [](const Operad&, int op, const std::vector<int>&) { return op; };
    std::map<std::string, int> units = {{"c", 0}};
    return Operad("com", {"c"}, std::move(ops), std::move(units), gamma, reorder);
}

Operad trivial_operad() {
    std::vector<Operad::Op> ops = {{"u", {"c"}, "c"}};
    auto gamma = [](const Operad&, int, const std::vector<int>&) { return 0; };
    auto reorder = [](const Operad&, int op, const std::vector<int>&) { return op; };
    return Operad("trivial", {"c"}, std::move(ops), {{"c", 0}}, gamma, reorder);
}

namespace {

std::string subtree_op_name(const std::string& root, const std::vector<std::string>& cut) {
    return root + "<" + join(cut, ",") + ">";
}

}  // namespace

Operad tree_operad(const Tree& t) {
    std::vector<Operad::Op> ops;
    for (const auto& r : t.edge_names()) {
        for (const auto& cut : t.subtree_cuts(r)) {
            std::vector<std::string> arrangement = cut;
            std::sort(arrangement.begin(), arrangement.end());
            std::vector<std::vector<std::string>> orderings;
            if (arrangement.empty()) {
                orderings.push_back({});
            } else {
                do {
                    orderings.push_back(arrangement);
                } while (std::next_permutation(arrangement.begin(), arrangement.end()));
            }
            for (auto& ord : orderings) {
                Operad::Op op;
                op.name = subtree_op_name(r, ord);
                op.inputs = ord;
                op.output = r;
                ops.push_back(std::move(op));
            }
        }
    }
    std::map<std::string, int> units;
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (ops[i].arity() == 1 && ops[i].inputs[0] == ops[i].output)
            units[ops[i].output] = static_cast<int>(i);
    auto gamma = [](const Operad& P, int op, const std::vector<int>& args) -> int {
        std::vector<std::string> cut;
        for (int b : args)
            for (const auto& leaf : P.operation(b).inputs) cut.push_back(leaf);
        return P.op_by_name(subtree_op_name(P.operation(op).output, cut));
    };
    auto reorder = [](const Operad& P, int op, const std::vector<int>& perm) -> int {
        const auto& ins = P.operation(op).inputs;
        std::vector<std::string> permuted(ins.size());
        for (std::size_t k = 0; k < ins.size(); ++k) permuted[k] = ins[perm[k]];
        return P.op_by_name(subtree_op_name(P.operation(op).output, permuted));
    };
    return Operad("omega(" + t.encoding() + ")", t.edge_names(), std::move(ops),
                  std::move(units), gamma, reorder);
}

Operad operad_from_json(const json& j) {
    std::vector<std::string> colours = j.at("colours").get<std::vector<std::string>>();
    std::vector<Operad::Op> ops;
    std::map<std::string, int> by_name;
    for (const auto& o : j.at("operations")) {
        Operad::Op op;
        op.name = o.at("name").get<std::string>();
        op.inputs = o.at("inputs").get<std::vector<std::string>>();
        op.output = o.at("output").get<std::string>();
        by_name[op.name] = static_cast<int>(ops.size());
        ops.push_back(std::move(op));
    }
    std::map<std::string, int> units;
    for (const auto& [c, u] : j.at("units").items())
        units[c] = by_name.at(u.get<std::string>());
    auto table = std::make_shared<std::map<std::string, int>>();
    if (j.contains("gamma")) {
        for (const auto& entry : j.at("gamma")) {
            std::string key = entry.at("op").get<std::string>() + "|";
            for (const auto& a : entry.at("args")) key += a.get<std::string>() + ",";
            (*table)[key] = by_name.at(entry.at("result").get<std::string>());
        }
    }
    auto gamma = [table](const Operad& P, int op, const std::vector<int>& args) -> int {
        std::string key = P.operation(op).name + "|";
        for (int b : args) key += P.operation(b).name + ",";
        auto it = table->find(key);
        return it == table->end() ? -1 : it->second;
    };
    auto reorder_table = std::make_shared<std::map<std::string, int>>();
    if (j.contains("action")) {
        for (const auto& entry : j.at("action")) {
            std::string key = entry.at("op").get<std::string>() + "|";
            for (const auto& v : entry.at("perm")) key += std::to_string(v.get<int>()) + ",";
            (*reorder_table)[key] = by_name.at(entry.at("result").get<std::string>());
        }
    }
    auto reorder = [reorder_table](const Operad& P, int op,
                                   const std::vector<int>& perm) -> int {
        bool is_id = true;
        for (std::size_t k = 0; k < perm.size(); ++k)
            if (perm[k] != static_cast<int>(k)) is_id = false;
        if (is_id) return op;
        std::string key = P.operation(op).name + "|";
        for (int v : perm) key += std::to_string(v) + ",";
        auto it = reorder_table->find(key);
        return it == reorder_table->end() ? -1 : it->second;
    };
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : "operad";
    return Operad(name, std::move(colours), std::move(ops), std::move(units), gamma,
                  reorder);
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

Algebra::Algebra(std::shared_ptr<const Operad> op,
                 std::map<std::string, std::vector<std::string>> carrier,
                 std::function<int(const Algebra&, int, const std::vector<int>&)> mult)
    : operad_(std::move(op)), carrier_(std::move(carrier)), mult_(std::move(mult)) {
    for (const auto& c : operad_->colours())
        if (!carrier_.count(c)) throw InvalidInput("carrier missing colour: " + c);
}

const std::vector<std::string>& Algebra::carrier(const std::string& colour) const {
    auto it = carrier_.find(colour);
    if (it == carrier_.end()) throw InvalidInput("unknown colour: " + colour);
    return it->second;
}

int Algebra::carrier_index(const std::string& colour, const std::string& elem) const {
    const auto& c = carrier(colour);
    auto it = std::find(c.begin(), c.end(), elem);
    return it == c.end() ? -1 : static_cast<int>(it - c.begin());
}

int Algebra::mult(int op, const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != operad_->operation(op).arity())
        throw InvalidInput("algebra multiplication arity mismatch");
    return mult_(*this, op, args);
}

std::string Algebra::validate(int budget) const {
    const Operad& P = *operad_;
    long long remaining = budget;
    for (const auto& c : P.colours()) {
        int u = P.unit(c);
        for (int x = 0; x < static_cast<int>(carrier(c).size()); ++x) {
            if (remaining-- <= 0) return "";
            int r = mult_(*this, u, {x});
            if (r >= 0 && r != x) return "unit does not act as identity on " + c;
        }
    }
    for (int p = 0; p < P.num_operations(); ++p) {
        int n = P.operation(p).arity();
        if (n < 2 || n > 3) continue;
        std::vector<int> sizes(n);
        for (int s = 0; s < n; ++s)
            sizes[s] = static_cast<int>(carrier(P.operation(p).inputs[s]).size());
        std::vector<int> pick(n, 0);
        std::function<bool(int)> rec = [&](int s) -> bool {
            if (remaining <= 0) return true;
            if (s == n) {
                --remaining;
                int base = mult_(*this, p, pick);
                for (const auto& pi : all_permutations(n)) {
                    int q = P.reorder(p, pi);
                    if (q < 0) continue;
                    std::vector<int> permuted(n);
                    for (int k = 0; k < n; ++k) permuted[k] = pick[pi[k]];
                    int other = mult_(*this, q, permuted);
                    if (base >= 0 && other >= 0 && base != other) return false;
                }
                return true;
            }
            for (int x = 0; x < sizes[s]; ++x) {
                pick[s] = x;
                if (!rec(s + 1)) return false;
            }
            return true;
        };
        if (!rec(0)) return "multiplication not equivariant at " + P.operation(p).name;
    }
    return "";
}

namespace {

struct FreeElem {
    int op;
    std::vector<std::string> gens;
};

std::string free_elem_name(const Operad& P, const FreeElem& e) {
    return P.operation(e.op).name + "(" + join(e.gens, ",") + ")";
}

FreeElem canonical_free_elem(const Operad& P, int op, std::vector<std::string> gens) {
    FreeElem best{op, gens};
    std::string best_name = free_elem_name(P, best);
    int n = static_cast<int>(gens.size());
    for (const auto& pi : all_permutations(n)) {
        int q = P.reorder(op, pi);
        if (q < 0) continue;
        std::vector<std::string> permuted(n);
        for (int k = 0; k < n; ++k) permuted[k] = gens[pi[k]];
        FreeElem cand{q, permuted};
        std::string cand_name = free_elem_name(P, cand);
        if (cand_name < best_name) {
            best = cand;
            best_name = cand_name;
        }
    }
    return best;
}

}  // namespace

Algebra free_algebra(std::shared_ptr<const Operad> op,
                     const std::vector<std::pair<std::string, std::string>>& generators,
                     int size_bound) {
    const Operad& P = *op;
    auto freeness = P.sigma_freeness();
    if (!freeness.is_free)
        throw InvalidInput("free algebra requires a sigma-free operad: " +
                           freeness.witness);
    for (const auto& [g, c] : generators)
        if (std::find(P.colours().begin(), P.colours().end(), c) == P.colours().end())
            throw InvalidInput("generator has unknown colour: " + c);
    if (size_bound < 1 && !generators.empty())
        throw BoundExceeded("free algebra truncation too small for the generators");

    std::map<std::string, std::set<std::string>> carrier_sets;
    for (const auto& c : op->colours()) carrier_sets[c] = {};
    std::map<std::string, std::pair<int, std::vector<std::string>>> rep_of_name;
    for (int p = 0; p < P.num_operations(); ++p) {
        int n = P.operation(p).arity();
        if (n == 0) {
            FreeElem e = canonical_free_elem(P, p, {});
            std::string nm = free_elem_name(P, e);
            carrier_sets[P.operation(p).output].insert(nm);
            rep_of_name[nm] = {e.op, e.gens};
            continue;
        }
        if (n > size_bound) continue;
        std::vector<std::vector<std::string>> slot_gens(n);
        for (int s = 0; s < n; ++s)
            for (const auto& [g, c] : generators)
                if (c == P.operation(p).inputs[s]) slot_gens[s].push_back(g);
        std::vector<std::string> pick(n);
        std::function<void(int)> rec = [&](int s) {
            if (s == n) {
                FreeElem e = canonical_free_elem(P, p, pick);
                std::string nm = free_elem_name(P, e);
                carrier_sets[P.operation(e.op).output].insert(nm);
                rep_of_name[nm] = {e.op, e.gens};
                return;
            }
            for (const auto& g : slot_gens[s]) {
                pick[s] = g;
                rec(s + 1);
            }
        };
        rec(0);
    }
    std::map<std::string, std::vector<std::string>> carrier;
    for (auto& [c, s] : carrier_sets)
        carrier[c] = std::vector<std::string>(s.begin(), s.end());

    auto reps =
        std::make_shared<std::map<std::string, std::pair<int, std::vector<std::string>>>>(
            std::move(rep_of_name));
    int bound = size_bound;
    auto mult = [reps, bound](const Algebra& A, int q, const std::vector<int>& args) -> int {
        const Operad& P = A.operad();
        std::vector<int> arg_ops;
        std::vector<std::string> gens;
        for (std::size_t s = 0; s < args.size(); ++s) {
            const std::string& colour = P.operation(q).inputs[s];
            const std::string& nm = A.carrier(colour)[args[s]];
            const auto& rep = reps->at(nm);
            arg_ops.push_back(rep.first);
            for (const auto& g : rep.second) gens.push_back(g);
        }
        if (static_cast<int>(gens.size()) > bound) return -1;
        int composed = P.gamma(q, arg_ops);
        if (composed < 0) return -1;
        FreeElem e = canonical_free_elem(P, composed, gens);
        return A.carrier_index(P.operation(e.op).output, free_elem_name(P, e));
    };
    return Algebra(op, std::move(carrier), mult);
}

Algebra terminal_algebra(std::shared_ptr<const Operad> op) {
    std::map<std::string, std::vector<std::string>> carrier;
    for (const auto& c : op->colours()) carrier[c] = {"pt"};
    auto mult = [](const Algebra&, int, const std::vector<int>&) { return 0; };
    return Algebra(op, std::move(carrier), mult);
}

Algebra parity_algebra(std::shared_ptr<const Operad> ass) {
    if (ass->colours().size() != 1)
        throw InvalidInput("parity algebra expects a one-colour operad");
    std::map<std::string, std::vector<std::string>> carrier;
    carrier[ass->colours()[0]] = {"0", "1"};
    auto mult = [](const Algebra&, int, const std::vector<int>& args) -> int {
        int s = 0;
        for (int a : args) s ^= a;
        return s;
    };
    return Algebra(ass, std::move(carrier), mult);
}

// ---------------------------------------------------------------------------
// Nerve
// ---------------------------------------------------------------------------

namespace {

struct NerveElem {
    std::map<std::string, std::string> colour;  // edge -> colour
    std::map<std::string, int> vop;             // vertex output edge -> op id
};

std::string nerve_name(const Operad& P, const NerveElem& e) {
    std::vector<std::string> cs, os;
    for (const auto& [edge, c] : e.colour) cs.push_back(edge + "=" + c);
    for (const auto& [v, op] : e.vop) os.push_back(v + "=" + P.operation(op).name);
    return "c[" + join(cs, ",") + "]o[" + join(os, ",") + "]";
}

std::vector<NerveElem> enumerate_nerve(const Operad& P, const Tree& t) {
    std::vector<NerveElem> out;
    auto edges = t.edge_names();
    std::vector<std::string> colouring(edges.size());
    std::function<void(std::size_t)> pick_colour = [&](std::size_t i) {
        if (i == edges.size()) {
            NerveElem base;
            for (std::size_t k = 0; k < edges.size(); ++k)
                base.colour[edges[k]] = colouring[k];
            std::vector<std::string> verts = t.vertices();
            std::vector<std::vector<int>> choices(verts.size());
            for (std::size_t v = 0; v < verts.size(); ++v) {
                std::vector<std::string> inputs;
                for (const auto& c : t.children(verts[v]))
                    inputs.push_back(base.colour.at(c));
                choices[v] = P.ops_with_profile(inputs, base.colour.at(verts[v]));
                if (choices[v].empty()) return;
            }
            std::vector<int> pick(verts.size(), 0);
            std::function<void(std::size_t)> pick_op = [&](std::size_t v) {
                if (v == verts.size()) {
                    NerveElem e = base;
                    for (std::size_t k = 0; k < verts.size(); ++k)
                        e.vop[verts[k]] = pick[k];
                    out.push_back(std::move(e));
                    return;
                }
                for (int op : choices[v]) {
                    pick[v] = op;
                    pick_op(v + 1);
                }
            };
            pick_op(0);
            return;
        }
        for (const auto& c : P.colours()) {
            colouring[i] = c;
            pick_colour(i + 1);
        }
    };
    pick_colour(0);
    return out;
}

NerveElem parse_nerve_name(const Operad& P, const std::string& name) {
    NerveElem e;
    auto cstart = name.find('[');
    auto cend = name.find("]o[");
    std::string cs = name.substr(cstart + 1, cend - cstart - 1);
    std::string os = name.substr(cend + 3, name.size() - cend - 4);
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        return parts;
    };
    for (const auto& kv : split(cs)) {
        auto eq = kv.find('=');
        e.colour[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    for (const auto& kv : split(os)) {
        auto eq = kv.find('=');
        e.vop[kv.substr(0, eq)] = P.op_by_name(kv.substr(eq + 1));
    }
    return e;
}

int eval_subtree(const Operad& P, const Tree& t, const NerveElem& e, const std::string& r,
                 const std::vector<std::string>& requested) {
    if (requested.size() == 1 && requested[0] == r) return P.unit(e.colour.at(r));
    if (!t.has_vertex_above(r))
        throw InvalidInput("evaluation reached a leaf outside the cut");
    auto kids = t.children(r);
    std::vector<std::vector<std::string>> sub_requests(kids.size());
    for (const auto& leaf : requested) {
        bool placed = false;
        for (std::size_t k = 0; k < kids.size() && !placed; ++k) {
            auto path = t.path_to_root(leaf);
            if (std::find(path.begin(), path.end(), kids[k]) != path.end()) {
                sub_requests[k].push_back(leaf);
                placed = true;
            }
        }
        if (!placed) throw InvalidInput("cut edge is not above the subtree root");
    }
    std::vector<int> args;
    std::vector<std::string> concat;
    for (std::size_t k = 0; k < kids.size(); ++k) {
        args.push_back(eval_subtree(P, t, e, kids[k], sub_requests[k]));
        for (const auto& l : sub_requests[k]) concat.push_back(l);
    }
    int g = P.gamma(e.vop.at(r), args);
    if (g < 0) throw BoundExceeded("operad table too small for a nerve composite");
    std::vector<int> perm(requested.size());
    for (std::size_t k = 0; k < requested.size(); ++k) {
        auto it = std::find(concat.begin(), concat.end(), requested[k]);
        perm[k] = static_cast<int>(it - concat.begin());
    }
    int r2 = P.reorder(g, perm);
    if (r2 < 0) throw BoundExceeded("operad action table too small");
    return r2;
}

NerveElem nerve_restrict(const Operad& P, const TreeMorphism& alpha, const NerveElem& e) {
    NerveElem out;
    const Tree& S = alpha.source();
    for (const auto& edge : S.edge_names())
        out.colour[edge] = e.colour.at(alpha.apply(edge));
    for (const auto& b : S.vertices()) {
        std::vector<std::string> requested;
        for (const auto& a : S.children(b)) requested.push_back(alpha.apply(a));
        out.vop[b] = eval_subtree(P, alpha.target(), e, alpha.apply(b), requested);
    }
    return out;
}

}  // namespace

DendroidalValuation nerve_valuation(std::shared_ptr<const Operad> op) {
    DendroidalValuation v;
    v.values = [op](const Tree& t) {
        std::vector<std::string> names;
        for (const auto& e : enumerate_nerve(*op, t)) names.push_back(nerve_name(*op, e));
        std::sort(names.begin(), names.end());
        return names;
    };
    v.act = [op](const TreeMorphism& alpha, const std::string& elem) {
        NerveElem e = parse_nerve_name(*op, elem);
        return nerve_name(*op, nerve_restrict(*op, alpha, e));
    };
    return v;
}

Presheaf dendroidal_nerve(const Operad& op, const OmegaSite& site) {
    auto shared = std::make_shared<Operad>(op);
    return tabulate(nerve_valuation(shared), site);
}

// ---------------------------------------------------------------------------
// The algebra presheaf over the nerve
// ---------------------------------------------------------------------------

namespace {

struct GElem {
    NerveElem nerve;
    std::map<std::string, std::string> label;  // edge -> carrier element name
};

std::string g_name(const Operad& P, const GElem& e) {
    std::vector<std::string> ls;
    for (const auto& [edge, x] : e.label) ls.push_back(edge + "=" + x);
    return nerve_name(P, e.nerve) + "x[" + join(ls, ",") + "]";
}

GElem parse_g_name(const Operad& P, const std::string& name) {
    GElem out;
    auto xpos = name.rfind("x[");
    out.nerve = parse_nerve_name(P, name.substr(0, xpos));
    std::string ls = name.substr(xpos + 2, name.size() - xpos - 3);
    if (!ls.empty()) {
        std::stringstream ss(ls);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            out.label[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return out;
}

std::vector<GElem> enumerate_g_local(const Operad& P, const Algebra& A, const Tree& t) {
    std::vector<GElem> out;
    auto edges = t.edge_names();
    for (const auto& nerve : enumerate_nerve(P, t)) {
        std::vector<int> pick(edges.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == edges.size()) {
                for (const auto& b : t.vertices()) {
                    std::vector<int> args;
                    for (const auto& a : t.children(b)) {
                        int ei = static_cast<int>(
                            std::find(edges.begin(), edges.end(), a) - edges.begin());
                        args.push_back(pick[ei]);
                    }
                    int bi = static_cast<int>(
                        std::find(edges.begin(), edges.end(), b) - edges.begin());
                    int prod = A.mult(nerve.vop.at(b), args);
                    if (prod < 0 || prod != pick[bi]) return;
                }
                GElem e;
                e.nerve = nerve;
                for (std::size_t k = 0; k < edges.size(); ++k)
                    e.label[edges[k]] = A.carrier(nerve.colour.at(edges[k]))[pick[k]];
                out.push_back(std::move(e));
                return;
            }
            int n = static_cast<int>(A.carrier(nerve.colour.at(edges[i])).size());
            for (int x = 0; x < n; ++x) {
                pick[i] = x;
                rec(i + 1);
            }
        };
        rec(0);
    }
    return out;
}

int eval_labels_up(const Algebra& A, const Tree& t, const NerveElem& nerve,
                   const std::map<std::string, int>& leaf_vals, const std::string& r,
                   std::map<std::string, int>& values) {
    if (t.is_leaf(r)) {
        values[r] = leaf_vals.at(r);
        return leaf_vals.at(r);
    }
    std::vector<int> args;
    for (const auto& c : t.children(r)) {
        int v = eval_labels_up(A, t, nerve, leaf_vals, c, values);
        if (v < 0) return -1;
        args.push_back(v);
    }
    int prod = A.mult(nerve.vop.at(r), args);
    values[r] = prod;
    return prod;
}

}  // namespace

FreeUnitData free_algebra_unit(std::shared_ptr<const Operad> op, const Tree& t,
                               const std::string& nerve_elem, int size_bound) {
    FreeUnitData out;
    NerveElem nerve = parse_nerve_name(*op, nerve_elem);
    std::vector<std::pair<std::string, std::string>> gens;
    for (const auto& leaf : t.leaves())
        gens.push_back({"g_" + leaf, nerve.colour.at(leaf)});
    out.algebra = free_algebra(op, gens, size_bound);
    // leaves carry their generators; inner edges evaluate upward
    std::map<std::string, int> leaf_vals;
    for (const auto& leaf : t.leaves()) {
        std::string name =
            op->operation(op->unit(nerve.colour.at(leaf))).name + "(g_" + leaf + ")";
        int idx = out.algebra.carrier_index(nerve.colour.at(leaf), name);
        if (idx < 0) throw BoundExceeded("generator missing from the free algebra");
        leaf_vals[leaf] = idx;
    }
    GElem elem;
    elem.nerve = nerve;
    std::map<std::string, int> values;
    for (const auto& e : t.edge_names()) {
        if (values.count(e)) continue;
        if (eval_labels_up(out.algebra, t, nerve, leaf_vals, e, values) < 0)
            throw BoundExceeded("free algebra truncation too small for the unit");
    }
    for (const auto& [edge, val] : values)
        elem.label[edge] = out.algebra.carrier(nerve.colour.at(edge))[val];
    out.element = g_name(*op, elem);
    out.projects_to_nerve =
        out.element.substr(0, out.element.rfind("x[")) == nerve_elem;
    // the element satisfies the local condition at every vertex
    bool local = true;
    for (const auto& b : t.vertices()) {
        std::vector<int> args;
        for (const auto& a : t.children(b)) args.push_back(values.at(a));
        if (out.algebra.mult(nerve.vop.at(b), args) != values.at(b)) local = false;
    }
    out.projects_to_nerve = out.projects_to_nerve && local;
    return out;
}

GRouteComparison compare_g_routes(const Operad& P, const Algebra& A, const Tree& t) {
    GRouteComparison out;
    for (const auto& e : enumerate_g_local(P, A, t)) out.local_route.push_back(g_name(P, e));
    std::sort(out.local_route.begin(), out.local_route.end());

    std::vector<std::string> pullback;
    std::set<std::string> induced;
    auto leaves = t.leaves();
    for (const auto& nerve : enumerate_nerve(P, t)) {
        std::vector<int> pick(leaves.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == leaves.size()) {
                std::map<std::string, int> leaf_vals;
                for (std::size_t k = 0; k < leaves.size(); ++k)
                    leaf_vals[leaves[k]] = pick[k];
                std::map<std::string, int> values;
                if (eval_labels_up(A, t, nerve, leaf_vals, t.root(), values) >= 0) {
                    bool all_defined = true;
                    for (const auto& e : t.edge_names()) {
                        if (!values.count(e)) {
                            // evaluate remaining branches (under caps)
                            if (eval_labels_up(A, t, nerve, leaf_vals, e, values) < 0)
                                all_defined = false;
                        }
                    }
                    if (!all_defined) return;
                    std::vector<std::string> ls;
                    for (const auto& l : leaves)
                        ls.push_back(l + "=" +
                                     A.carrier(nerve.colour.at(l))[leaf_vals.at(l)]);
                    pullback.push_back(nerve_name(P, nerve) + "x[" + join(ls, ",") + "]");
                    GElem full;
                    full.nerve = nerve;
                    for (const auto& [edge, val] : values)
                        full.label[edge] = A.carrier(nerve.colour.at(edge))[val];
                    induced.insert(g_name(P, full));
                }
                return;
            }
            int n = static_cast<int>(A.carrier(nerve.colour.at(leaves[i])).size());
            for (int x = 0; x < n; ++x) {
                pick[i] = x;
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::sort(pullback.begin(), pullback.end());
    out.pullback_route = pullback;

    std::set<std::string> local_set(out.local_route.begin(), out.local_route.end());
    if (induced != local_set || induced.size() != pullback.size()) {
        out.agree = false;
        out.witness = "route sizes: local=" + std::to_string(local_set.size()) +
                      " pullback=" + std::to_string(pullback.size());
    }
    return out;
}

GValuation g_valuation(std::shared_ptr<const Operad> op, std::shared_ptr<const Algebra> alg) {
    GValuation out;
    out.presheaf.values = [op, alg](const Tree& t) {
        std::vector<std::string> names;
        for (const auto& e : enumerate_g_local(*op, *alg, t))
            names.push_back(g_name(*op, e));
        std::sort(names.begin(), names.end());
        return names;
    };
    out.presheaf.act = [op, alg](const TreeMorphism& alpha, const std::string& elem) {
        GElem e = parse_g_name(*op, elem);
        GElem moved;
        moved.nerve = nerve_restrict(*op, alpha, e.nerve);
        for (const auto& edge : alpha.source().edge_names())
            moved.label[edge] = e.label.at(alpha.apply(edge));
        return g_name(*op, moved);
    };
    out.project = [](const Tree&, const std::string& elem) {
        return elem.substr(0, elem.rfind("x["));
    };
    return out;
}

CovariantVerdict check_strict_covariant_fibration(
    const DendroidalValuation& total, const DendroidalValuation& base,
    const std::function<std::string(const Tree&, const std::string&)>& project,
    int max_arity) {
    CovariantVerdict verdict;
    Tree eta = Tree::edge_only("e");
    auto total_eta = total.values(eta);
    std::map<std::string, std::string> project_eta;
    for (const auto& x : total_eta) project_eta[x] = project(eta, x);

    for (int n = 0; n <= max_arity; ++n) {
        Tree cn = Tree::corolla(n);
        auto xs = total.values(cn);
        auto bs = base.values(cn);
        std::vector<TreeMorphism> leaf_maps;
        for (int i = 1; i <= n; ++i) {
            std::map<std::string, std::string> m = {{"e", "l" + std::to_string(i)}};
            auto r = validate_morphism(eta, cn, m);
            leaf_maps.push_back(*r.morphism);
        }
        std::set<std::string> images;
        bool injective = true;
        for (const auto& x : xs) {
            std::string key = project(cn, x);
            for (const auto& lm : leaf_maps) key += "|" + total.act(lm, x);
            if (!images.insert(key).second) injective = false;
        }
        long long compatible = 0;
        for (const auto& b : bs) {
            std::vector<std::string> leaf_colours;
            for (const auto& lm : leaf_maps) leaf_colours.push_back(base.act(lm, b));
            long long ways = 1;
            for (int i = 0; i < n; ++i) {
                long long fits = 0;
                for (const auto& x : total_eta)
                    if (project_eta.at(x) == leaf_colours[i]) ++fits;
                ways *= fits;
            }
            compatible += ways;
        }
        if (!injective || static_cast<long long>(images.size()) != compatible ||
            static_cast<long long>(xs.size()) != compatible) {
            verdict.pass = false;
            verdict.witness = "corolla arity " + std::to_string(n) +
                              ": |X| = " + std::to_string(xs.size()) + ", pullback = " +
                              std::to_string(compatible) +
                              (injective ? "" : " (not injective)");
            return verdict;
        }
    }
    return verdict;
}

}  // namespace dendron
