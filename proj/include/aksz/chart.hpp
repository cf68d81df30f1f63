#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aksz {

enum class Parity : unsigned char { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
    return static_cast<Parity>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}
constexpr Parity flip(Parity p) noexcept { return p + Parity::odd; }
constexpr bool is_odd(Parity p) noexcept { return p == Parity::odd; }
constexpr Parity parity_of_count(std::size_t n) noexcept {
    return (n & 1U) ? Parity::odd : Parity::even;
}
/// (-1)^{a*b}
constexpr int koszul(Parity a, Parity b) noexcept {
    return (is_odd(a) && is_odd(b)) ? -1 : 1;
}

const char* to_string(Parity p);

enum class Role { source, target, mapping, variation, antitangent };

const char* to_string(Role r);

struct Coordinate {
    std::string name;
    Parity parity = Parity::even;
    Role role = Role::target;

    bool operator==(const Coordinate&) const = default;
};

/// Ordered list of coordinates; the declaration order is the canonical monomial
/// order. A chart may pair some coordinates with a differential partner of
/// flipped parity (the antitangent coordinates of a doubled chart). Charts are
/// cheap immutable handles.
class Chart {
public:
    Chart();
    explicit Chart(std::vector<Coordinate> coords);

    /// Appends a differential for each listed coordinate, named prefix+name,
    /// with flipped parity. Existing pairings are kept.
    Chart with_differentials(const std::vector<std::size_t>& of, std::string_view prefix = "d",
                             Role role = Role::antitangent) const;
    /// Doubles every coordinate.
    Chart doubled(std::string_view prefix = "d", Role role = Role::antitangent) const;

    /// Chart spanned by the non-differential coordinates (a prefix of this one).
    Chart base() const;

    std::size_t size() const noexcept;
    const Coordinate& operator[](std::size_t i) const;
    const std::vector<Coordinate>& coordinates() const noexcept;

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;  // throws unknown_identifier

    /// Index of the differential dx of coordinate x, if paired.
    std::optional<std::size_t> differential_of(std::size_t i) const;
    /// Index of x when i is the differential dx.
    std::optional<std::size_t> base_of(std::size_t i) const;
    bool is_differential(std::size_t i) const { return base_of(i).has_value(); }
    bool has_differentials() const;

    std::size_t odd_count() const noexcept;
    /// 1 for odd coordinates, 0 for even, indexed like the chart.
    const std::vector<unsigned char>& odd_mask() const noexcept;

    bool operator==(const Chart& other) const;
    bool operator!=(const Chart& other) const { return !(*this == other); }

    struct Data;

private:
    explicit Chart(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

struct Chart::Data {
    std::vector<Coordinate> coords;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::optional<std::size_t>> diff;  // x -> dx
    std::vector<std::optional<std::size_t>> base;  // dx -> x
    std::size_t base_size = 0;                     // differentials form a suffix
    std::size_t odd_count = 0;
    std::vector<unsigned char> odd;
};

}  // namespace aksz
