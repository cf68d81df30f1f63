#include "aksz/chart.hpp"

#include <stdexcept>

#include "aksz/errors.hpp"

namespace aksz {

const char* to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

const char* to_string(Role r) {
    switch (r) {
        case Role::source: return "source";
        case Role::target: return "target";
        case Role::mapping: return "mapping";
        case Role::variation: return "variation";
        case Role::antitangent: return "antitangent";
    }
    return "?";
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::syntax: return "SyntaxError";
        case ErrorKind::unknown_identifier: return "UnknownIdentifier";
        case ErrorKind::odd_square: return "OddSquare";
        case ErrorKind::mixed_charts: return "MixedCharts";
        case ErrorKind::parity_mismatch: return "ParityMismatch";
        case ErrorKind::inhomogeneous_parity: return "InhomogeneousParity";
        case ErrorKind::odd_in_berezin_list: return "EvenCoordinateInBerezinList";
        case ErrorKind::not_closed: return "NotClosed";
        case ErrorKind::degree_zero: return "DegreeZero";
        case ErrorKind::not_invertible: return "NotInvertible";
        case ErrorKind::not_nilpotent_perturbation: return "NotNilpotentPerturbation";
        case ErrorKind::integrability_violation: return "IntegrabilityViolation";
        case ErrorKind::potential_mismatch: return "PotentialMismatch";
        case ErrorKind::volume_not_invariant: return "VolumeNotInvariant";
        case ErrorKind::no_sign_works: return "NoSignWorks";
        case ErrorKind::invalid_argument: return "InvalidArgument";
        case ErrorKind::schema: return "SchemaViolation";
    }
    return "?";
}

namespace {

std::shared_ptr<Chart::Data> build(std::vector<Coordinate> coords,
                                   std::vector<std::optional<std::size_t>> diff,
                                   std::vector<std::optional<std::size_t>> base,
                                   std::size_t base_size) {
    auto d = std::make_shared<Chart::Data>();
    d->coords = std::move(coords);
    d->diff = std::move(diff);
    d->base = std::move(base);
    d->base_size = base_size;
    d->odd.reserve(d->coords.size());
    for (std::size_t i = 0; i < d->coords.size(); ++i) {
        const auto& c = d->coords[i];
        if (c.name.empty()) throw Error(ErrorKind::invalid_argument, "empty coordinate name");
        if (!d->index.emplace(c.name, i).second) {
            throw Error(ErrorKind::invalid_argument, "duplicate coordinate name '" + c.name + "'");
        }
        d->odd.push_back(is_odd(c.parity) ? 1 : 0);
        if (is_odd(c.parity)) ++d->odd_count;
    }
    return d;
}

}  // namespace

Chart::Chart() : Chart(std::vector<Coordinate>{}) {}

Chart::Chart(std::vector<Coordinate> coords) {
    const std::size_t n = coords.size();
    d_ = build(std::move(coords), std::vector<std::optional<std::size_t>>(n),
               std::vector<std::optional<std::size_t>>(n), n);
}

Chart Chart::with_differentials(const std::vector<std::size_t>& of, std::string_view prefix,
                                Role role) const {
    auto coords = d_->coords;
    auto diff = d_->diff;
    auto base = d_->base;
    for (std::size_t i : of) {
        if (i >= d_->base_size) {
            throw Error(ErrorKind::invalid_argument, "differential requested for a non-base coordinate");
        }
        if (diff[i]) {
            throw Error(ErrorKind::invalid_argument,
                        "coordinate '" + coords[i].name + "' already has a differential");
        }
        const std::size_t k = coords.size();
        coords.push_back({std::string(prefix) + coords[i].name, flip(coords[i].parity), role});
        diff[i] = k;
        diff.emplace_back();
        base.emplace_back(i);
    }
    return Chart(build(std::move(coords), std::move(diff), std::move(base), d_->base_size));
}

Chart Chart::doubled(std::string_view prefix, Role role) const {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < d_->base_size; ++i) all.push_back(i);
    return with_differentials(all, prefix, role);
}

Chart Chart::base() const {
    if (d_->base_size == d_->coords.size()) return *this;
    std::vector<Coordinate> coords(d_->coords.begin(),
                                   d_->coords.begin() + static_cast<std::ptrdiff_t>(d_->base_size));
    return Chart(std::move(coords));
}

std::size_t Chart::size() const noexcept { return d_->coords.size(); }

const Coordinate& Chart::operator[](std::size_t i) const { return d_->coords.at(i); }

const std::vector<Coordinate>& Chart::coordinates() const noexcept { return d_->coords; }

std::optional<std::size_t> Chart::find(std::string_view name) const {
    auto it = d_->index.find(std::string(name));
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

std::size_t Chart::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::unknown_identifier, "unknown coordinate '" + std::string(name) + "'");
}

std::optional<std::size_t> Chart::differential_of(std::size_t i) const { return d_->diff.at(i); }

std::optional<std::size_t> Chart::base_of(std::size_t i) const { return d_->base.at(i); }

bool Chart::has_differentials() const { return d_->base_size != d_->coords.size(); }

std::size_t Chart::odd_count() const noexcept { return d_->odd_count; }

const std::vector<unsigned char>& Chart::odd_mask() const noexcept { return d_->odd; }

bool Chart::operator==(const Chart& other) const {
    if (d_ == other.d_) return true;
    return d_->coords == other.d_->coords && d_->diff == other.d_->diff;
}

}  // namespace aksz
