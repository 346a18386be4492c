#include "chasekit/dchase.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "json.hpp"

#include "chasekit/printer.hpp"

namespace chasekit {

std::vector<std::size_t> ChaseTree::leaves() const {
    std::vector<std::size_t> out;
    if (nodes.empty()) return out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        std::size_t id = stack.back();
        stack.pop_back();
        const Node& n = nodes[id];
        if (n.children.empty()) {
            out.push_back(id);
            continue;
        }
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
            stack.push_back(*it);
        }
    }
    return out;
}

bool ChaseTree::fully_expanded() const {
    for (std::size_t id : leaves()) {
        if (nodes[id].status == Status::Open) return false;
    }
    return !nodes.empty();
}

bool ChaseTree::all_failed() const {
    const std::vector<std::size_t> ls = leaves();
    return !ls.empty() && std::all_of(ls.begin(), ls.end(), [this](std::size_t id) {
        return nodes[id].status == Status::Failed;
    });
}

std::optional<Substitution> dtgd_applicable(const Dependency& dtgd,
                                            const Instance& instance) {
    const Dtgd* rule = std::get_if<Dtgd>(&dtgd);
    if (!rule) {
        throw std::invalid_argument(
            "dtgd_applicable requires a tuple-generating dependency");
    }
    std::optional<Substitution> first;
    for_each_homomorphism(rule->body, instance, {}, [&](const Substitution& h) {
        if (head_satisfiable(*rule, h, instance)) return true;
        first = h;
        return false;
    });
    return first;
}

DtgdChildren apply_dtgd(const Dependency& dtgd, const Substitution& h,
                        const Instance& instance, const NullSource& nulls) {
    const Dtgd* rule = std::get_if<Dtgd>(&dtgd);
    if (!rule) {
        throw std::invalid_argument(
            "apply_dtgd requires a tuple-generating dependency");
    }
    DtgdChildren out;
    const std::size_t n = rule->disjuncts.size();
    for (std::size_t k = 0; k < n; ++k) {
        NullSource source =
            n == 1 ? nulls
                   : NullSource(nulls.branch_tag() + "." + std::to_string(k + 1));
        Instance child = instance;
        fire_disjunct(rule->disjuncts[k], h, child, source, nullptr);
        out.instances.push_back(std::move(child));
        out.sources.push_back(std::move(source));
    }
    return out;
}

namespace {

struct Candidate {
    std::size_t dep_index;
    Substitution hom;
};

struct BranchState {
    NullSource nulls;
    std::deque<Candidate> pending;
    std::uint32_t level = 0;
};

class TreeBuilder {
public:
    TreeBuilder(const Instance& db, const std::vector<Dependency>& sigma,
                const ChaseBudget& budget, ApplicationOrder order)
        : sigma_(sigma), budget_(budget), order_(order) {
        tree_.nodes.push_back({db, ChaseTree::Status::Open, {}, {}, {}, 0, 0, {}});
        states_.push_back({NullSource("0"), {}, 0});
        work_.push_back(0);
        for (const Dependency& d : sigma_) {
            collect_constants(body_of(d));
            if (const Dtgd* tgd = std::get_if<Dtgd>(&d)) {
                for (const Disjunct& disjunct : tgd->disjuncts) {
                    collect_constants(disjunct.head);
                }
            }
        }
    }

    ChaseTree run(unsigned threads) {
        if (threads <= 1) {
            while (!work_.empty()) {
                std::size_t id = work_.front();
                work_.pop_front();
                expand(id);
            }
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < threads; ++i) {
                pool.emplace_back([this] { worker(); });
            }
            for (std::thread& t : pool) t.join();
        }
        tree_.theory_constants = std::move(theory_constants_);
        return std::move(tree_);
    }

private:
    void collect_constants(const std::vector<Atom>& atoms) {
        for (const Atom& a : atoms) {
            for (const Term& t : a.args) {
                if (t.is_constant()) theory_constants_.insert(t.name());
            }
        }
    }

    bool candidate_applicable(const Candidate& c, const Instance& instance) const {
        const Dtgd& rule = std::get<Dtgd>(sigma_[c.dep_index]);
        // EGD merging may have renamed terms since the candidate was found,
        // so the body embedding has to be re-verified, not just the head.
        for (const Atom& a : rule.body) {
            if (!instance.contains(apply_substitution(c.hom, a))) return false;
        }
        return !head_satisfiable(rule, c.hom, instance);
    }

    void refresh_pending(BranchState& st, const Instance& instance) const {
        st.pending.clear();
        std::vector<std::size_t> idx(sigma_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        if (order_ == ApplicationOrder::Reversed) {
            std::reverse(idx.begin(), idx.end());
        }
        for (std::size_t i : idx) {
            if (!std::holds_alternative<Dtgd>(sigma_[i])) continue;
            std::vector<Substitution> homs =
                applicable_homomorphisms(sigma_[i], instance);
            if (order_ == ApplicationOrder::Reversed) {
                std::reverse(homs.begin(), homs.end());
            }
            for (Substitution& h : homs) st.pending.push_back({i, std::move(h)});
        }
        ++st.level;
    }

    // Expands one node by one chase step. Touches only this node's state
    // plus, under the lock, the shared containers and the step counter.
    // Deque growth never invalidates references, but element lookup has to
    // be serialized against concurrent push_back.
    void expand(std::size_t id) {
        mu_.lock();
        ChaseTree::Node& node = tree_.nodes[id];
        BranchState& st = states_[id];
        mu_.unlock();

        if (auto fail = egd_fixpoint(node.instance, sigma_, order_)) {
            node.status = ChaseTree::Status::Failed;
            node.fail_label = fail->rule_label;
            return;
        }
        if (auto fail = violated_constraint(node.instance, sigma_, order_)) {
            node.status = ChaseTree::Status::Failed;
            node.fail_label = fail->rule_label;
            return;
        }

        std::optional<Candidate> next;
        while (!st.pending.empty()) {
            Candidate c = std::move(st.pending.front());
            st.pending.pop_front();
            if (candidate_applicable(c, node.instance)) {
                next = std::move(c);
                break;
            }
        }
        if (!next) {
            if (budget_.max_depth && st.level >= *budget_.max_depth) {
                node.status = ChaseTree::Status::Open;
                return;
            }
            refresh_pending(st, node.instance);
            if (st.pending.empty()) {
                node.status = ChaseTree::Status::Saturated;
                return;
            }
            next = std::move(st.pending.front());
            st.pending.pop_front();
        }

        {
            std::lock_guard<std::mutex> lock(mu_);
            if (budget_.max_steps && tree_.steps >= *budget_.max_steps) {
                node.status = ChaseTree::Status::Open;
                return;
            }
            ++tree_.steps;
        }

        DtgdChildren children =
            apply_dtgd(sigma_[next->dep_index], next->hom, node.instance,
                       st.nulls);

        std::lock_guard<std::mutex> lock(mu_);
        node.status = ChaseTree::Status::Inner;
        node.rule_label = dependency_label(next->dep_index);
        node.hom = next->hom;
        for (std::size_t k = 0; k < children.instances.size(); ++k) {
            std::size_t child_id = tree_.nodes.size();
            tree_.nodes.push_back({std::move(children.instances[k]),
                                   ChaseTree::Status::Open,
                                   {},
                                   {},
                                   {},
                                   id,
                                   static_cast<int>(k) + 1,
                                   {}});
            states_.push_back({std::move(children.sources[k]), st.pending,
                               st.level});
            node.children.push_back(child_id);
            work_.push_back(child_id);
        }
        cv_.notify_all();
    }

    void worker() {
        std::unique_lock<std::mutex> lock(mu_);
        while (true) {
            cv_.wait(lock, [this] { return !work_.empty() || busy_ == 0; });
            if (work_.empty()) {
                if (busy_ == 0) {
                    cv_.notify_all();
                    return;
                }
                continue;
            }
            std::size_t id = work_.front();
            work_.pop_front();
            ++busy_;
            lock.unlock();
            expand(id);
            lock.lock();
            --busy_;
            if (work_.empty() && busy_ == 0) cv_.notify_all();
        }
    }

    const std::vector<Dependency>& sigma_;
    ChaseBudget budget_;
    ApplicationOrder order_;
    ChaseTree tree_;
    std::deque<BranchState> states_;
    std::deque<std::size_t> work_;
    std::set<std::string> theory_constants_;
    std::mutex mu_;
    std::condition_variable cv_;
    unsigned busy_ = 0;
};

}  // namespace

ChaseTree disjunctive_chase(const Instance& db,
                            const std::vector<Dependency>& sigma,
                            const ChaseBudget& budget, ApplicationOrder order,
                            unsigned threads) {
    TreeBuilder builder(db, sigma, budget, order);
    return builder.run(threads);
}

Certainty certain_bcq(const ConjunctiveQuery& q, const ChaseTree& tree) {
    if (!q.is_boolean()) throw NotBooleanError();
    if (tree.all_failed()) return Certainty::Entailed;

    bool open_gap = false;
    bool saturated_gap = false;
    for (std::size_t id : tree.leaves()) {
        const ChaseTree::Node& leaf = tree.nodes[id];
        if (leaf.status == ChaseTree::Status::Failed) continue;
        if (evaluate_bcq(q, leaf.instance)) continue;
        if (leaf.status == ChaseTree::Status::Open) {
            open_gap = true;
        } else {
            saturated_gap = true;
        }
    }
    if (!open_gap && !saturated_gap) return Certainty::Entailed;
    // A counterexample leaf is only conclusive once fully expanded; an Open
    // leaf may still grow into satisfying q or fail.
    if (open_gap) return Certainty::Unknown;
    return tree.fully_expanded() ? Certainty::NotEntailed : Certainty::Unknown;
}

Certainty certain_bcq(const ConjunctiveQuery& q, const Instance& db,
                      const std::vector<Dependency>& sigma,
                      const ChaseBudget& budget) {
    return certain_bcq(q, disjunctive_chase(db, sigma, budget));
}

CertainAnswers certain_answers(const ConjunctiveQuery& q,
                               const ChaseTree& tree) {
    if (q.is_boolean()) {
        throw std::invalid_argument(
            "certain_answers requires arity >= 1; use certain_bcq");
    }
    CertainAnswers out;
    std::vector<std::size_t> alive;
    bool open = false;
    for (std::size_t id : tree.leaves()) {
        const ChaseTree::Node& leaf = tree.nodes[id];
        if (leaf.status == ChaseTree::Status::Failed) continue;
        alive.push_back(id);
        open |= leaf.status == ChaseTree::Status::Open;
    }
    if (alive.empty()) {
        out.unsatisfiable = true;
        out.status = AnswerStatus::Exact;
        // No model: every tuple over the active domain is certain.
        std::set<std::string> constants = tree.theory_constants;
        if (!tree.nodes.empty()) {
            for (const Term& t : tree.nodes[0].instance.active_domain()) {
                if (t.is_constant()) constants.insert(t.name());
            }
        }
        std::vector<std::vector<std::string>> tuples{{}};
        for (std::size_t i = 0; i < q.arity(); ++i) {
            std::vector<std::vector<std::string>> grown;
            for (const auto& prefix : tuples) {
                for (const std::string& c : constants) {
                    auto tuple = prefix;
                    tuple.push_back(c);
                    grown.push_back(std::move(tuple));
                }
            }
            tuples = std::move(grown);
        }
        if (!constants.empty()) {
            out.tuples.insert(tuples.begin(), tuples.end());
        }
        return out;
    }

    bool first = true;
    for (std::size_t id : alive) {
        std::set<std::vector<std::string>> leaf_answers =
            answers(q, tree.nodes[id].instance);
        if (first) {
            out.tuples = std::move(leaf_answers);
            first = false;
        } else {
            std::set<std::vector<std::string>> kept;
            std::set_intersection(out.tuples.begin(), out.tuples.end(),
                                  leaf_answers.begin(), leaf_answers.end(),
                                  std::inserter(kept, kept.begin()));
            out.tuples = std::move(kept);
        }
        if (out.tuples.empty()) break;
    }
    out.status = open ? AnswerStatus::LowerBoundUnknown : AnswerStatus::Exact;
    return out;
}

CertainAnswers certain_answers(const ConjunctiveQuery& q, const Instance& db,
                               const std::vector<Dependency>& sigma,
                               const ChaseBudget& budget) {
    return certain_answers(q, disjunctive_chase(db, sigma, budget));
}

namespace {

std::string node_path(const ChaseTree& tree, std::size_t id) {
    std::vector<int> rev;
    for (std::size_t at = id; at != 0; at = tree.nodes[at].parent) {
        rev.push_back(tree.nodes[at].disjunct_index);
    }
    std::string path = "0";
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
        path += "." + std::to_string(*it);
    }
    return path;
}

const char* status_name(ChaseTree::Status s) {
    switch (s) {
        case ChaseTree::Status::Inner: return "inner";
        case ChaseTree::Status::Saturated: return "saturated";
        case ChaseTree::Status::Failed: return "failed";
        case ChaseTree::Status::Open: return "open";
    }
    return "?";
}

void export_text_node(const ChaseTree& tree, std::size_t id, int depth,
                      bool with_instances, std::ostringstream& os) {
    const ChaseTree::Node& n = tree.nodes[id];
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ')
       << node_path(tree, id) << " [" << status_name(n.status) << "]";
    if (n.status == ChaseTree::Status::Inner) {
        os << " applied " << n.rule_label << " with " << n.hom->text();
    } else if (n.status == ChaseTree::Status::Failed) {
        os << " by " << n.fail_label;
    }
    os << "\n";
    if (with_instances && n.children.empty()) {
        for (const Atom& a : n.instance) {
            os << std::string(static_cast<std::size_t>(depth) * 2 + 2, ' ')
               << to_text(a) << "\n";
        }
    }
    for (std::size_t child : n.children) {
        export_text_node(tree, child, depth + 1, with_instances, os);
    }
}

nlohmann::ordered_json export_json_node(const ChaseTree& tree, std::size_t id) {
    const ChaseTree::Node& n = tree.nodes[id];
    nlohmann::ordered_json j;
    j["path"] = node_path(tree, id);
    j["status"] = status_name(n.status);
    if (n.status == ChaseTree::Status::Inner) {
        j["rule"] = n.rule_label;
        j["substitution"] = n.hom->text();
    }
    if (n.status == ChaseTree::Status::Failed) j["failed_by"] = n.fail_label;
    if (n.children.empty()) {
        nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
        for (const Atom& a : n.instance) atoms.push_back(to_text(a));
        j["instance"] = std::move(atoms);
    } else {
        nlohmann::ordered_json children = nlohmann::ordered_json::array();
        for (std::size_t child : n.children) {
            children.push_back(export_json_node(tree, child));
        }
        j["children"] = std::move(children);
    }
    return j;
}

}  // namespace

std::string export_tree_text(const ChaseTree& tree, bool with_instances) {
    std::ostringstream os;
    if (!tree.nodes.empty()) {
        export_text_node(tree, 0, 0, with_instances, os);
    }
    return os.str();
}

std::string export_tree_json(const ChaseTree& tree) {
    if (tree.nodes.empty()) return "{}";
    return export_json_node(tree, 0).dump(2);
}

}  // namespace chasekit
