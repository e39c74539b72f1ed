#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace collatz {

/// Target increasing-decreasing shape: run lengths v_1..v_L, all >= 1.
/// Run 0 (and every even index) is a strictly increasing run; odd indices
/// are strictly decreasing runs.
class Pattern {
public:
    explicit Pattern(std::vector<std::uint64_t> runs);

    /// Comma-separated decimal run lengths, no spaces: "1,2,3".
    static Pattern parse(std::string_view text);

    const std::vector<std::uint64_t>& runs() const noexcept { return runs_; }
    std::size_t size() const noexcept { return runs_.size(); }
    std::uint64_t operator[](std::size_t i) const { return runs_[i]; }

    static constexpr bool increasing_at(std::size_t i) noexcept { return i % 2 == 0; }

    /// Sum of all run lengths; the number of steps the pattern constrains.
    std::uint64_t total_steps() const noexcept;

    std::string to_string() const;

    bool operator==(const Pattern&) const = default;

private:
    std::vector<std::uint64_t> runs_;
};

}  // namespace collatz
