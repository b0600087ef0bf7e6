#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace skoo {

/// A data file compiled into the library; `path` is relative to the schema
/// directory (e.g. "skoo.ttl", "fixtures/wille-ch3.ttl").
struct EmbeddedFile {
    std::string_view path;
    std::string_view contents;
};

std::span<const EmbeddedFile> embedded_files() noexcept;

std::optional<std::string_view> embedded_file(std::string_view path) noexcept;

}  // namespace skoo
