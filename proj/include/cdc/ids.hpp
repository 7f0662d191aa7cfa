#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <ostream>

namespace cdc {

// Vertex and edge identifiers are opaque and stable: once an id is retired
// (vertex deleted, edge replaced by subdivision) it is never handed out again
// by the same graph.
struct VertexId {
    std::uint32_t value = 0;
    constexpr auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
    std::uint32_t value = 0;
    constexpr auto operator<=>(const EdgeId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, VertexId v) { return os << 'v' << v.value; }
inline std::ostream& operator<<(std::ostream& os, EdgeId e) { return os << 'e' << e.value; }

} // namespace cdc

template <>
struct std::hash<cdc::VertexId> {
    std::size_t operator()(cdc::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};

template <>
struct std::hash<cdc::EdgeId> {
    std::size_t operator()(cdc::EdgeId e) const noexcept { return std::hash<std::uint32_t>{}(e.value); }
};
