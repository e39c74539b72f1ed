#include "collatz/pattern.hpp"

#include "collatz/bigint.hpp"

#include <charconv>
#include <numeric>

namespace collatz {

Pattern::Pattern(std::vector<std::uint64_t> runs) : runs_(std::move(runs)) {
    if (runs_.empty()) {
        throw ValidationError("pattern must contain at least one run length");
    }
    for (std::size_t i = 0; i < runs_.size(); ++i) {
        if (runs_[i] == 0) {
            throw ValidationError("run length must be ≥ 1", i);
        }
    }
}

Pattern Pattern::parse(std::string_view text) {
    if (text.empty()) {
        throw ValidationError("empty pattern");
    }
    std::vector<std::uint64_t> runs;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        const auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        std::uint64_t value = 0;
        const auto* first = token.data();
        const auto* last = token.data() + token.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (token.empty() || ec != std::errc{} || ptr != last) {
            throw ValidationError("malformed run length '" + std::string(token) + "'", runs.size());
        }
        runs.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return Pattern(std::move(runs));
}

std::uint64_t Pattern::total_steps() const noexcept {
    return std::accumulate(runs_.begin(), runs_.end(), std::uint64_t{0});
}

std::string Pattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += std::to_string(runs_[i]);
    }
    return out;
}

}  // namespace collatz
