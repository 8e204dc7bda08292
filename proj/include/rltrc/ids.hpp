#pragma once

#include <cstdint>
#include <type_traits>

namespace rltrc {

// Strongly typed identifiers. Enum classes give ordering, hashing and
// equality for free while refusing accidental mixing of id kinds.
enum class NodeId : std::uint32_t {};
enum class ZoneId : std::uint32_t {};
enum class SessionId : std::uint32_t {};
enum class PacketId : std::uint64_t {};

template <class Id>
constexpr std::underlying_type_t<Id> index_of(Id id) noexcept {
  return static_cast<std::underlying_type_t<Id>>(id);
}

template <class Id>
constexpr Id make_id(std::underlying_type_t<Id> raw) noexcept {
  return static_cast<Id>(raw);
}

}  // namespace rltrc
