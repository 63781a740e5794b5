#include "homorbit/counting.hpp"

#include "homorbit/bits.hpp"
#include "homorbit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace homorbit {

namespace detail {

// Enumeration plan for one singleton bag {source}: the vertices of
// P[{source}] in a fixed topological order, plus, per position, the earlier
// positions holding its in-neighbors.
struct BagPlan {
    int source = -1;
    std::uint16_t reach = 0;
    std::vector<int> order;  // pattern ids, order[0] == source
    std::vector<int> pos;    // pattern id -> index in order, -1 outside the bag
    std::vector<std::vector<int>> in_positions;
};

struct OrientationPlan {
    DagPattern dag;
    DagTreeDecomposition tree;  // base rooting; passes re-root as needed
    std::vector<BagPlan> bags;  // aligned with tree.bags
};

struct PatternJob {
    Pattern pattern;
    std::vector<OrientationPlan> orientations;
};

struct ClassPlan {
    std::size_t job = 0;
    int mark = 0;                   // h_S in the job pattern's labeling
    std::vector<long long> tally;   // signed multiplicity per orbit of H
};

struct CountPlanImpl {
    std::vector<PatternJob> jobs;
    std::vector<ClassPlan> classes;
    std::size_t base_job = 0;        // job holding H itself (canonical labels)
    std::vector<int> base_relabel;   // H vertex -> base job vertex
};

namespace {

BagPlan make_bag_plan(const DagPattern& p, int source) {
    BagPlan plan;
    plan.source = source;
    plan.reach = reach_mask(p, static_cast<std::uint16_t>(1u << source));
    plan.pos.assign(static_cast<std::size_t>(p.vertex_count()), -1);

    // Kahn restricted to the reach set; the source is its only in-degree-0
    // vertex, so it comes first.
    std::vector<int> indeg(static_cast<std::size_t>(p.vertex_count()), 0);
    std::uint16_t rest = plan.reach;
    while (rest) {
        int v = __builtin_ctz(rest);
        rest &= static_cast<std::uint16_t>(rest - 1);
        indeg[static_cast<std::size_t>(v)] = __builtin_popcount(p.in_mask(v) & plan.reach);
    }
    std::uint16_t ready = 0;
    std::uint16_t cur = plan.reach;
    while (cur) {
        int v = __builtin_ctz(cur);
        cur &= static_cast<std::uint16_t>(cur - 1);
        if (indeg[static_cast<std::size_t>(v)] == 0)
            ready = static_cast<std::uint16_t>(ready | (1u << v));
    }
    while (ready) {
        int v = __builtin_ctz(ready);
        ready &= static_cast<std::uint16_t>(ready - 1);
        plan.pos[static_cast<std::size_t>(v)] = static_cast<int>(plan.order.size());
        plan.order.push_back(v);
        std::uint16_t outs = static_cast<std::uint16_t>(p.out_mask(v) & plan.reach);
        while (outs) {
            int u = __builtin_ctz(outs);
            outs &= static_cast<std::uint16_t>(outs - 1);
            if (--indeg[static_cast<std::size_t>(u)] == 0)
                ready = static_cast<std::uint16_t>(ready | (1u << u));
        }
    }
    assert(plan.order.front() == source);

    plan.in_positions.resize(plan.order.size());
    for (std::size_t i = 1; i < plan.order.size(); ++i) {
        std::uint16_t ins = static_cast<std::uint16_t>(
            p.in_mask(plan.order[i]) & plan.reach);
        while (ins) {
            int u = __builtin_ctz(ins);
            ins &= static_cast<std::uint16_t>(ins - 1);
            plan.in_positions[i].push_back(plan.pos[static_cast<std::size_t>(u)]);
        }
        assert(!plan.in_positions[i].empty());
    }
    return plan;
}

std::optional<OrientationPlan> make_orientation_plan(DagPattern dag) {
    auto tree = width1_decomposition(dag);
    if (!tree) return std::nullopt;
    OrientationPlan plan;
    plan.dag = std::move(dag);
    plan.tree = std::move(*tree);
    plan.bags.reserve(plan.tree.bags.size());
    for (const auto& bag : plan.tree.bags) {
        assert(bag.size() == 1);
        plan.bags.push_back(make_bag_plan(plan.dag, bag.front()));
    }
    return plan;
}

template <class Emit>
void enumerate_positions(const BagPlan& plan, const OrientedGraph& g,
                         std::array<VertexId, kHardMaxPatternVertices>& assign,
                         std::size_t depth, Emit& emit) {
    if (depth == plan.order.size()) {
        emit(std::span<const VertexId>(assign.data(), depth));
        return;
    }
    const auto& ins = plan.in_positions[depth];
    // Iterate candidates from the placed in-neighbor with the smallest out
    // list; remaining in-arcs are checked per candidate.
    std::size_t best = 0;
    for (std::size_t j = 1; j < ins.size(); ++j)
        if (g.outdegree(assign[static_cast<std::size_t>(ins[j])]) <
            g.outdegree(assign[static_cast<std::size_t>(ins[best])]))
            best = j;
    for (VertexId x : g.out_neighbors(assign[static_cast<std::size_t>(ins[best])])) {
        bool ok = true;
        for (std::size_t j = 0; j < ins.size(); ++j) {
            if (j == best) continue;
            if (!g.has_arc(assign[static_cast<std::size_t>(ins[j])], x)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        assign[depth] = x;
        enumerate_positions(plan, g, assign, depth + 1, emit);
    }
}

template <class Emit>
void enumerate_bag(const BagPlan& plan, const OrientedGraph& g, Emit&& emit) {
    std::array<VertexId, kHardMaxPatternVertices> assign{};
    if (plan.order.size() == 1) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            assign[0] = v;
            emit(std::span<const VertexId>(assign.data(), 1));
        }
        return;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        assign[0] = v;
        enumerate_positions(plan, g, assign, 1, emit);
    }
}

using ExtTable = std::unordered_map<HomKey, std::uint64_t, HomKeyHash>;

HomKey extract_key(std::span<const VertexId> image, const std::vector<int>& positions) {
    HomKey key;
    key.size = static_cast<std::uint8_t>(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        key.image[i] = image[static_cast<std::size_t>(positions[i])];
    return key;
}

// Collapsed table for one tree edge. Single-vertex restriction keys get a
// dense per-graph-vertex array; wider keys fall back to hashing. Stored
// values are always positive, so zero doubles as "absent".
struct NodeTable {
    bool dense = false;
    std::vector<std::uint64_t> dense_vals;
    std::size_t nonzero = 0;
    ExtTable sparse;

    void reset_dense(VertexId n) {
        dense = true;
        dense_vals.assign(n, 0);
        nonzero = 0;
    }

    bool empty() const { return dense ? nonzero == 0 : sparse.empty(); }

    void clear() {
        dense_vals = {};
        sparse = {};
        nonzero = 0;
        dense = false;
    }
};

// One bottom-up dictionary pass over the tree re-rooted at root_bag. Child
// tables are collapsed to the restriction onto the parent's shared vertex
// set as soon as each node is processed, so full per-bag tables never exist.
// root_emit receives every root-bag homomorphism with its nonzero extension
// count ext(P[down(root)], G; phi) = ext(P, G; phi).
template <class RootEmit>
void run_rooted_pass(const OrientationPlan& plan, int root_bag, const OrientedGraph& g,
                     RootEmit&& root_emit) {
    const std::size_t nodes = plan.tree.bags.size();
    DagTreeDecomposition tree = reroot(plan.tree, root_bag);

    std::vector<std::vector<int>> children(nodes);
    for (std::size_t i = 0; i < nodes; ++i)
        if (tree.parent[i] >= 0)
            children[static_cast<std::size_t>(tree.parent[i])].push_back(static_cast<int>(i));

    std::vector<int> process_order;  // children before parents
    {
        std::vector<int> stack{root_bag};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            process_order.push_back(v);
            for (int c : children[static_cast<std::size_t>(v)]) stack.push_back(c);
        }
        std::reverse(process_order.begin(), process_order.end());
    }

    // Key layout per tree edge: the shared pattern vertices in ascending id
    // order, so the child's collapse and the parent's lookup agree.
    std::vector<std::vector<int>> restrict_positions(nodes);   // in own order
    std::vector<std::vector<std::vector<int>>> child_positions(nodes);  // in parent order
    for (std::size_t c = 0; c < nodes; ++c) {
        int par = tree.parent[c];
        if (par < 0) continue;
        std::uint16_t shared = static_cast<std::uint16_t>(
            plan.bags[c].reach & plan.bags[static_cast<std::size_t>(par)].reach);
        for (int v : mask_to_vertices(shared)) {
            restrict_positions[c].push_back(plan.bags[c].pos[static_cast<std::size_t>(v)]);
        }
    }
    for (std::size_t p = 0; p < nodes; ++p) {
        child_positions[p].resize(children[p].size());
        for (std::size_t ci = 0; ci < children[p].size(); ++ci) {
            int c = children[p][ci];
            std::uint16_t shared = static_cast<std::uint16_t>(
                plan.bags[static_cast<std::size_t>(c)].reach & plan.bags[p].reach);
            for (int v : mask_to_vertices(shared))
                child_positions[p][ci].push_back(plan.bags[p].pos[static_cast<std::size_t>(v)]);
        }
    }

    std::vector<NodeTable> table(nodes);
    for (int node : process_order) {
        const BagPlan& bp = plan.bags[static_cast<std::size_t>(node)];
        const auto& chs = children[static_cast<std::size_t>(node)];
        const auto& chpos = child_positions[static_cast<std::size_t>(node)];
        const bool is_root = node == root_bag;
        NodeTable& mine = table[static_cast<std::size_t>(node)];
        const auto& rpos = restrict_positions[static_cast<std::size_t>(node)];
        if (!is_root && rpos.size() == 1) mine.reset_dense(g.vertex_count());

        enumerate_bag(bp, g, [&](std::span<const VertexId> image) {
            std::uint64_t ext = 1;
            for (std::size_t ci = 0; ci < chs.size(); ++ci) {
                const NodeTable& ct = table[static_cast<std::size_t>(chs[ci])];
                std::uint64_t val;
                if (ct.dense) {
                    val = ct.dense_vals[image[static_cast<std::size_t>(chpos[ci][0])]];
                } else {
                    auto it = ct.sparse.find(extract_key(image, chpos[ci]));
                    val = it == ct.sparse.end() ? 0 : it->second;
                }
                if (val == 0) {
                    ext = 0;
                    break;
                }
                ext = checked_mul(ext, val);
            }
            if (ext == 0) return;
            if (is_root) {
                root_emit(image, ext);
            } else if (mine.dense) {
                std::uint64_t& slot =
                    mine.dense_vals[image[static_cast<std::size_t>(rpos[0])]];
                if (slot == 0) ++mine.nonzero;
                slot = checked_add(slot, ext);
            } else {
                std::uint64_t& slot = mine.sparse[extract_key(image, rpos)];
                slot = checked_add(slot, ext);
            }
        });

        for (int c : chs) table[static_cast<std::size_t>(c)].clear();
        if (!is_root && mine.empty()) return;  // nothing can extend upward
    }
}

// Adds this orientation's VertexHom counts into acc (Algorithm 1 inner loop:
// one rooting per bag, each pattern vertex accumulated exactly once).
void accumulate_orientation(const OrientationPlan& plan, const OrientedGraph& g,
                            VertexHomTable& acc) {
    const int k = plan.dag.vertex_count();
    std::vector<bool> updated(static_cast<std::size_t>(k), false);
    for (std::size_t b = 0; b < plan.tree.bags.size(); ++b) {
        const BagPlan& bp = plan.bags[b];
        std::vector<std::pair<int, int>> fresh;  // (pattern vertex, position)
        for (int v : mask_to_vertices(bp.reach))
            if (!updated[static_cast<std::size_t>(v)])
                fresh.emplace_back(v, bp.pos[static_cast<std::size_t>(v)]);
        if (fresh.empty()) continue;
        run_rooted_pass(plan, static_cast<int>(b), g,
                        [&](std::span<const VertexId> image, std::uint64_t ext) {
                            for (auto [h, pos] : fresh) {
                                std::uint64_t& slot =
                                    acc.row(h)[image[static_cast<std::size_t>(pos)]];
                                slot = checked_add(slot, ext);
                            }
                        });
        for (auto [h, pos] : fresh) updated[static_cast<std::size_t>(h)] = true;
    }
    assert(std::all_of(updated.begin(), updated.end(), [](bool u) { return u; }));
}

unsigned effective_threads(unsigned requested, std::size_t work_items) {
    unsigned t = requested ? requested : std::thread::hardware_concurrency();
    if (t < 1) t = 1;
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work_items, 1)));
}

// Eq-style sum over all orientations of the job's pattern. Orientations are
// independent read-only passes; per-thread partial tables merge by addition,
// so the result does not depend on scheduling.
VertexHomTable compute_job(const PatternJob& job, const OrientedGraph& g,
                           unsigned threads) {
    const int k = job.pattern.vertex_count();
    VertexHomTable total(k, g.vertex_count());
    unsigned nthreads = effective_threads(threads, job.orientations.size());
    if (nthreads <= 1) {
        for (const auto& oplan : job.orientations) accumulate_orientation(oplan, g, total);
        return total;
    }

    std::atomic<std::size_t> next{0};
    std::vector<VertexHomTable> partials;
    partials.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) partials.emplace_back(k, g.vertex_count());
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= job.orientations.size()) break;
                    accumulate_orientation(job.orientations[i], g, partials[t]);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    for (const auto& part : partials)
        for (std::size_t i = 0; i < total.counts.size(); ++i)
            total.counts[i] = checked_add(total.counts[i], part.counts[i]);
    return total;
}

std::vector<OrientationPlan> orientation_plans_or_throw(const Pattern& h) {
    std::vector<OrientationPlan> plans;
    for (auto& dag : acyclic_orientations(h)) {
        auto plan = make_orientation_plan(std::move(dag));
        if (!plan)
            throw dichotomy_violation(
                "an acyclic orientation admits no width-1 DAG-tree decomposition");
        plans.push_back(std::move(*plan));
    }
    return plans;
}

} // namespace

} // namespace detail

std::vector<int> bag_vertex_order(const DagPattern& p, int source) {
    return detail::make_bag_plan(p, source).order;
}

void for_each_bag_homomorphism(
    const DagPattern& p, int source, const OrientedGraph& g,
    const std::function<void(std::span<const VertexId>)>& emit) {
    detail::enumerate_bag(detail::make_bag_plan(p, source), g, emit);
}

std::vector<HomKey> enumerate_bag_homomorphisms(const DagPattern& p, int source,
                                                const OrientedGraph& g) {
    std::vector<HomKey> out;
    for_each_bag_homomorphism(p, source, g, [&](std::span<const VertexId> image) {
        HomKey key;
        key.size = static_cast<std::uint8_t>(image.size());
        std::copy(image.begin(), image.end(), key.image.begin());
        out.push_back(key);
    });
    return out;
}

ExtensionDictionary build_extension_dictionary(const DagPattern& p,
                                               const DagTreeDecomposition& t,
                                               const OrientedGraph& g) {
    for (const auto& bag : t.bags)
        if (bag.size() != 1)
            throw std::invalid_argument("extension dictionaries require width-1 bags");
    detail::OrientationPlan plan;
    plan.dag = p;
    plan.tree = t;
    for (const auto& bag : t.bags) plan.bags.push_back(detail::make_bag_plan(p, bag.front()));

    ExtensionDictionary dict;
    dict.bag_source = t.bags[static_cast<std::size_t>(t.root)].front();
    dict.bag_vertex_order = plan.bags[static_cast<std::size_t>(t.root)].order;
    {
        std::uint16_t all = 0;
        for (const auto& bag : t.bags)
            all = static_cast<std::uint16_t>(all | reach_mask(p, vertices_to_mask(bag)));
        dict.down_set = mask_to_vertices(all);
    }
    detail::run_rooted_pass(plan, t.root, g,
                            [&](std::span<const VertexId> image, std::uint64_t ext) {
                                HomKey key;
                                key.size = static_cast<std::uint8_t>(image.size());
                                std::copy(image.begin(), image.end(), key.image.begin());
                                dict.ext.emplace(key, ext);
                            });
    return dict;
}

VertexHomTable vertex_homs_for_orientation(const DagPattern& p, const OrientedGraph& g) {
    auto plan = detail::make_orientation_plan(p);
    if (!plan)
        throw dichotomy_violation("orientation admits no width-1 DAG-tree decomposition");
    VertexHomTable table(p.vertex_count(), g.vertex_count());
    detail::accumulate_orientation(*plan, g, table);
    return table;
}

VertexHomTable vertex_homs(const Pattern& h, const Graph& g, const CountOptions& options) {
    if (licl(h) > 5)
        throw dichotomy_violation("licl(H) > 5: VertexHom is not near-linear computable");
    detail::PatternJob job;
    job.pattern = h;
    job.orientations = detail::orientation_plans_or_throw(h);
    OrientedGraph og = orient_acyclic(g, degeneracy_order(g));
    return detail::compute_job(job, og, options.threads);
}

OrbitCountPlan build_count_plan(const Pattern& h) {
    OrbitCountPlan plan;
    plan.pattern = h;
    plan.orbits = automorphism_orbits(h);
    plan.lipco_value = lipco(h);
    if (plan.lipco_value > 5)
        throw dichotomy_violation("lipco(H) = " + std::to_string(plan.lipco_value) +
                                  " > 5: OrbitHom is conjecturally not near-linear");

    auto impl = std::make_shared<detail::CountPlanImpl>();
    const std::size_t orbit_count = plan.orbits.orbits.size();

    std::map<std::vector<std::pair<int, int>>, std::size_t> job_of_canon;
    std::map<std::pair<std::size_t, int>, std::size_t> class_of;
    auto intern_job = [&](const Pattern& canon) {
        auto [it, inserted] = job_of_canon.emplace(canon.edges(), impl->jobs.size());
        if (inserted) impl->jobs.push_back(detail::PatternJob{canon, {}});
        return it->second;
    };

    {
        CanonicalForm base = canonical_form(h);
        impl->base_job = intern_job(base.pattern);
        impl->base_relabel = base.relabel;
    }

    for (std::size_t oi = 0; oi < orbit_count; ++oi) {
        for (const auto& s : orbit_independent_sets(h, plan.orbits.orbits[oi])) {
            MergedPattern merged = merge_pattern(h, s);
            CanonicalForm canon = canonical_form(merged.base, merged.merged_vertex);
            std::size_t job = intern_job(canon.pattern);
            auto [it, inserted] = class_of.emplace(std::make_pair(job, canon.mark),
                                                   impl->classes.size());
            if (inserted) {
                detail::ClassPlan cls;
                cls.job = job;
                cls.mark = canon.mark;
                cls.tally.assign(orbit_count, 0);
                impl->classes.push_back(std::move(cls));
            }
            impl->classes[it->second].tally[oi] += merged.sign;
        }
    }

    // Lemma-5.9 territory: lipco(H) <= 5 guarantees licl(H_S) <= 5 for every
    // merged pattern, so every orientation decomposes at width 1.
    for (auto& job : impl->jobs)
        job.orientations = detail::orientation_plans_or_throw(job.pattern);

    plan.impl = std::move(impl);
    return plan;
}

CountResult count_orbits(const OrbitCountPlan& plan, const Graph& g,
                         const CountOptions& options) {
    const detail::CountPlanImpl& impl = *plan.impl;
    const VertexId n = g.vertex_count();
    const int k = plan.pattern.vertex_count();

    DegeneracyOrdering ordering = degeneracy_order(g);
    OrientedGraph og = orient_acyclic(g, ordering);

    std::vector<VertexHomTable> job_tables;
    job_tables.reserve(impl.jobs.size());
    for (const auto& job : impl.jobs)
        job_tables.push_back(detail::compute_job(job, og, options.threads));

    CountResult res;
    res.kappa = ordering.kappa;

    res.vertex = VertexHomTable(k, n);
    for (int h = 0; h < k; ++h) {
        auto src = job_tables[impl.base_job].row(impl.base_relabel[static_cast<std::size_t>(h)]);
        std::copy(src.begin(), src.end(), res.vertex.row(h).begin());
    }
    res.hom_total = 0;
    if (k > 0)
        for (std::uint64_t c : res.vertex.row(0)) res.hom_total = checked_add(res.hom_total, c);

    res.orbit.orbit_representatives = plan.orbits.representatives();
    res.orbit.graph_vertex_count = n;
    res.orbit.counts.assign(plan.orbits.orbits.size() * static_cast<std::size_t>(n), 0);

    constexpr std::uint64_t kSignedMax =
        static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> acc(n);
    for (std::size_t oi = 0; oi < plan.orbits.orbits.size(); ++oi) {
        std::fill(acc.begin(), acc.end(), 0);
        for (const auto& cls : impl.classes) {
            long long tally = cls.tally[oi];
            if (tally == 0) continue;
            auto row = job_tables[cls.job].row(cls.mark);
            for (VertexId v = 0; v < n; ++v) {
                std::uint64_t c = row[v];
                if (c > kSignedMax) throw arithmetic_overflow();
                acc[v] = checked_add_signed(
                    acc[v], checked_mul_signed(tally, static_cast<std::int64_t>(c)));
            }
        }
        auto out = res.orbit.row(oi);
        for (VertexId v = 0; v < n; ++v) {
            // Lemma 5.3 produces a plain count; a negative sum means a bug.
            if (acc[v] < 0)
                throw std::logic_error("inclusion-exclusion yielded a negative count");
            out[v] = static_cast<std::uint64_t>(acc[v]);
        }
    }
    return res;
}

CountResult count_orbits(const Pattern& h, const Graph& g, const CountOptions& options) {
    return count_orbits(build_count_plan(h), g, options);
}

OrbitHomTable orbit_homs(const Pattern& h, const Graph& g, const CountOptions& options) {
    return count_orbits(h, g, options).orbit;
}

std::uint64_t aggregate(const OrbitHomTable& t, std::size_t orbit_index) {
    std::uint64_t total = 0;
    for (std::uint64_t c : t.row(orbit_index)) total = checked_add(total, c);
    return total;
}

void write_orbit_tsv(std::ostream& os, const OrbitHomTable& t) {
    os << "vertex\torbit_rep\tcount\n";
    for (VertexId v = 0; v < t.graph_vertex_count; ++v)
        for (std::size_t oi = 0; oi < t.orbit_representatives.size(); ++oi)
            os << v << '\t' << t.orbit_representatives[oi] << '\t' << t.at(oi, v) << '\n';
}

} // namespace homorbit
