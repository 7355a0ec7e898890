#include "pnmetric/space.hpp"

#include <sstream>

#include "pnmetric/errors.hpp"
#include "pnmetric/tolerance.hpp"

namespace pnmetric {

namespace {

std::string key_to_string(const std::vector<std::string>& points, const MultisetKey& key) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out << ",";
        out << points[static_cast<std::size_t>(key[i])];
    }
    out << "}";
    return out.str();
}

std::map<std::string, int> build_index(const std::vector<std::string>& points) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!index.emplace(points[i], static_cast<int>(i)).second)
            throw DuplicateEntry("duplicate point identifier: " + points[i]);
    }
    return index;
}

}  // namespace

PartialNMetricSpace PartialNMetricSpace::build(std::vector<std::string> points, int n,
                                               const std::vector<Entry>& entries) {
    if (n < 2) throw ArityError("arity must be >= 2, got " + std::to_string(n));
    if (points.empty()) throw SchemaError("point set must be nonempty");

    PartialNMetricSpace space;
    space.points_ = std::move(points);
    space.n_ = n;
    space.index_ = build_index(space.points_);

    for (const auto& [names, value] : entries) {
        if (static_cast<int>(names.size()) != n)
            throw ArityError("multiset of size " + std::to_string(names.size()) +
                             " in a space of arity " + std::to_string(n));
        MultisetKey key;
        key.reserve(names.size());
        for (const auto& name : names) key.push_back(space.point_index(name));
        key = canonical_key(std::move(key));
        if (space.table_.count(key))
            throw DuplicateEntry("two entries canonicalize to the same multiset " +
                                 key_to_string(space.points_, key));
        space.table_.emplace(std::move(key), value);
    }

    for_each_multiset(space.num_points(), n, [&](const MultisetKey& key) {
        if (!space.table_.count(key))
            throw MissingEntry("missing table entry for multiset " +
                               key_to_string(space.points_, key));
    });
    return space;
}

int PartialNMetricSpace::point_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownPoint("unknown point: " + name);
    return it->second;
}

double PartialNMetricSpace::value_at(const MultisetKey& canonical) const {
    auto it = table_.find(canonical);
    if (it == table_.end())
        throw MissingEntry("no table entry for multiset " + key_to_string(points_, canonical));
    return it->second;
}

double PartialNMetricSpace::eval(const std::vector<std::string>& tuple) const {
    MultisetKey key;
    key.reserve(tuple.size());
    for (const auto& name : tuple) key.push_back(point_index(name));
    return eval_indices(std::move(key));
}

double PartialNMetricSpace::eval_indices(MultisetKey tuple) const {
    if (static_cast<int>(tuple.size()) != n_)
        throw ArityError("tuple of length " + std::to_string(tuple.size()) +
                         " in a space of arity " + std::to_string(n_));
    for (int i : tuple)
        if (i < 0 || i >= num_points()) throw UnknownPoint("point index out of range");
    return value_at(canonical_key(std::move(tuple)));
}

PartialMetricSpace PartialMetricSpace::build(std::vector<std::string> points,
                                             const std::vector<Entry>& entries) {
    if (points.empty()) throw SchemaError("point set must be nonempty");

    PartialMetricSpace space;
    space.points_ = std::move(points);
    space.index_ = build_index(space.points_);

    for (const auto& [pair, value] : entries) {
        int x = space.point_index(pair.first);
        int y = space.point_index(pair.second);
        auto key = std::minmax(x, y);
        if (!space.table_.emplace(std::make_pair(key.first, key.second), value).second)
            throw DuplicateEntry("two entries canonicalize to the same pair (" +
                                 pair.first + "," + pair.second + ")");
    }

    int p = space.num_points();
    for (int x = 0; x < p; ++x)
        for (int y = x; y < p; ++y)
            if (!space.table_.count({x, y}))
                throw MissingEntry("missing pair entry (" + space.points_[static_cast<std::size_t>(x)] +
                                   "," + space.points_[static_cast<std::size_t>(y)] + ")");
    return space;
}

int PartialMetricSpace::point_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownPoint("unknown point: " + name);
    return it->second;
}

double PartialMetricSpace::at(int x, int y) const {
    auto key = std::minmax(x, y);
    return table_.at({key.first, key.second});
}

std::optional<std::string> PartialMetricSpace::first_axiom_violation(double tol) const {
    int p = num_points();
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            if (x == y) continue;
            if (!leq(at(x, x), at(x, y), tol))
                return "small self-distance fails: p(" + points_[static_cast<std::size_t>(x)] + "," +
                       points_[static_cast<std::size_t>(x)] + ") > p(" +
                       points_[static_cast<std::size_t>(x)] + "," + points_[static_cast<std::size_t>(y)] + ")";
            if (eq(at(x, y), at(x, x), tol) && eq(at(x, y), at(y, y), tol))
                return "separation fails: p(" + points_[static_cast<std::size_t>(x)] + "," +
                       points_[static_cast<std::size_t>(y)] + ") = p(x,x) = p(y,y) with x != y";
        }
    }
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y)
            for (int z = 0; z < p; ++z)
                if (!leq(at(x, y), at(x, z) + at(z, y) - at(z, z), tol))
                    return "triangle fails at (" + points_[static_cast<std::size_t>(x)] + "," +
                           points_[static_cast<std::size_t>(y)] + ") via " +
                           points_[static_cast<std::size_t>(z)];
    return std::nullopt;
}

bool PartialMetricSpace::is_strong(double tol) const {
    int p = num_points();
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y)
            if (x != y && !strictly_less(at(x, x), at(x, y), tol)) return false;
    return true;
}

double MetricSpace::at(int x, int y) const {
    auto key = std::minmax(x, y);
    return table_.at({key.first, key.second});
}

std::optional<std::string> MetricSpace::first_axiom_violation(double tol) const {
    int p = num_points();
    for (int x = 0; x < p; ++x) {
        if (!eq(at(x, x), 0.0, tol))
            return "d(x,x) != 0 at " + points_[static_cast<std::size_t>(x)];
        for (int y = 0; y < p; ++y) {
            if (at(x, y) < -tol)
                return "negative distance at (" + points_[static_cast<std::size_t>(x)] + "," +
                       points_[static_cast<std::size_t>(y)] + ")";
            if (x != y && eq(at(x, y), 0.0, tol))
                return "d(x,y) = 0 for distinct (" + points_[static_cast<std::size_t>(x)] + "," +
                       points_[static_cast<std::size_t>(y)] + ")";
            for (int z = 0; z < p; ++z)
                if (!leq(at(x, y), at(x, z) + at(z, y), tol))
                    return "triangle fails at (" + points_[static_cast<std::size_t>(x)] + "," +
                           points_[static_cast<std::size_t>(y)] + ") via " +
                           points_[static_cast<std::size_t>(z)];
        }
    }
    return std::nullopt;
}

PartialNMetricSpace from_partial_metric(const PartialMetricSpace& pspace, int n,
                                        bool checked, double tol) {
    if (n < 2) throw ArityError("arity must be >= 2, got " + std::to_string(n));
    if (checked) {
        if (auto violation = pspace.first_axiom_violation(tol))
            throw PartialMetricAxiomViolation(*violation);
    }

    std::vector<PartialNMetricSpace::Entry> entries;
    for_each_multiset(pspace.num_points(), n, [&](const MultisetKey& key) {
        double sum = 0.0;
        for (std::size_t i = 0; i < key.size(); ++i)
            for (std::size_t j = i + 1; j < key.size(); ++j)
                sum += pspace.at(key[i], key[j]);
        std::vector<std::string> names;
        names.reserve(key.size());
        for (int idx : key) names.push_back(pspace.point_name(idx));
        entries.emplace_back(std::move(names), sum);
    });
    return PartialNMetricSpace::build(pspace.points(), n, entries);
}

MetricSpace associated_metric(const PartialNMetricSpace& space, bool force) {
    if (!force && !space.flags.partial_n_metric.value_or(false))
        throw InvalidSpace(
            "associated_metric requires a space validated as a partial n-metric "
            "(run validate first, or force)");

    std::map<std::pair<int, int>, double> table;
    int p = space.num_points();
    for (int x = 0; x < p; ++x)
        for (int y = x; y < p; ++y)
            table[{x, y}] = space.mixed(x, y) - space.self_distance(x) +
                            space.mixed(y, x) - space.self_distance(y);
    return MetricSpace(space.points(), std::move(table));
}

bool is_n_metric(const PartialNMetricSpace& space, double tol) {
    for (int x = 0; x < space.num_points(); ++x)
        if (!eq(space.self_distance(x), 0.0, tol)) return false;
    return true;
}

}  // namespace pnmetric
