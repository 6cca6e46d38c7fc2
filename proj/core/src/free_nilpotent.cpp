#include <carnot/algebra.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace carnot {

namespace {

// Classical Hall set on the order "degree, then creation index". A tree
// [u, v] with u < v is in the set iff v is a generator or v = [a, b] with
// a <= u. Creation proceeds degree by degree, so position order refines
// degree order, which is what the rewriting below requires.
struct HallBuilder {
    struct Tree {
        int degree;
        int left;  // -1 for generators
        int right; // generator id for generators, else tree index
    };

    int generators;
    int step;
    int dim_cap;
    std::vector<Tree> trees;
    std::map<std::pair<int, int>, int> pair_index;
    std::map<std::pair<int, int>, SparseVec> nf_memo;

    HallBuilder(int g, int m, int cap) : generators(g), step(m), dim_cap(cap)
    {
        for (int i = 0; i < g; ++i) trees.push_back({1, -1, i});
        for (int d = 2; d <= m; ++d) {
            const int existing = static_cast<int>(trees.size());
            for (int u = 0; u < existing; ++u) {
                for (int v = u + 1; v < existing; ++v) {
                    if (trees[u].degree + trees[v].degree != d) continue;
                    if (!hall_pair(u, v)) continue;
                    pair_index[{u, v}] = static_cast<int>(trees.size());
                    trees.push_back({d, u, v});
                    if (static_cast<int>(trees.size()) > dim_cap)
                        throw std::length_error(
                            "free nilpotent algebra exceeds the dimension cap");
                }
            }
        }
    }

    bool is_generator(int t) const { return trees[t].left < 0; }

    bool hall_pair(int u, int v) const
    {
        return is_generator(v) || trees[v].left <= u;
    }

    static void add_to(SparseVec& acc, const SparseVec& s, const Rational& f)
    {
        for (const auto& [k, c] : s) {
            acc[k] += f * c;
            if (acc[k] == 0) acc.erase(k);
        }
    }

    /// Normal form of [tree u, tree v] in the Hall basis, with degrees above
    /// the step truncated to zero.
    SparseVec normal_form(int u, int v)
    {
        if (u == v) return {};
        if (u > v) {
            SparseVec s = normal_form(v, u);
            for (auto& [k, c] : s) c = -c;
            return s;
        }
        if (trees[u].degree + trees[v].degree > step) return {};
        const auto key = std::make_pair(u, v);
        if (auto it = nf_memo.find(key); it != nf_memo.end()) return it->second;

        SparseVec result;
        if (hall_pair(u, v)) {
            result[pair_index.at(key)] = 1;
        } else {
            // v = [a, b] with a > u: Jacobi gives [u,[a,b]] = [[u,a],b] + [a,[u,b]].
            const int a = trees[v].left;
            const int b = trees[v].right;
            for (const auto& [t, c] : normal_form(u, a))
                add_to(result, normal_form(t, b), c);
            for (const auto& [t, c] : normal_form(u, b))
                add_to(result, normal_form(a, t), c);
        }
        nf_memo[key] = result;
        return result;
    }

    bool right_nested(int t) const
    {
        if (is_generator(t)) return true;
        return is_generator(trees[t].left) && right_nested(trees[t].right);
    }

    std::vector<int> word_of(int t) const
    {
        if (is_generator(t)) return {trees[t].right};
        auto w = word_of(trees[t].right);
        w.insert(w.begin(), trees[trees[t].left].right);
        return w;
    }
};

} // namespace

StratifiedAlgebra free_nilpotent(int generators, int step, int dim_cap)
{
    if (generators < 1 || step < 1)
        throw std::invalid_argument("free_nilpotent requires generators >= 1, step >= 1");

    HallBuilder hall(generators, step, dim_cap);
    const int q = static_cast<int>(hall.trees.size());

    AlgebraDef def;
    def.name = "free:" + std::to_string(generators) + ":" + std::to_string(step);
    def.layer_dims.assign(step, 0);
    for (const auto& t : hall.trees) def.layer_dims[t.degree - 1] += 1;

    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            SparseVec s = hall.normal_form(i, j);
            if (!s.empty()) def.brackets[{i, j}] = std::move(s);
        }

    for (int t = 0; t < q; ++t)
        if (hall.right_nested(t)) def.witnesses[t] = hall.word_of(t);

    return StratifiedAlgebra::create(std::move(def));
}

} // namespace carnot
