#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace witness {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic random stream: std::mt19937_64 seeded through SplitMix64,
/// with bounded draws done by rejection sampling so results do not depend on
/// the standard library's distribution implementations.
///
/// Streams are derived per purpose (`Rng::stream(seed, "goal")`), so adding
/// draws to one stage of a generator leaves the others untouched.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    static Rng stream(std::uint64_t seed, std::string_view purpose);
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi]. Requires lo <= hi.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    template <class T>
    void shuffle(std::vector<T>& items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i - 1)));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// k distinct elements chosen uniformly, in selection order.
    template <class T>
    std::vector<T> sample(std::vector<T> items, std::size_t k)
    {
        for (std::size_t i = 0; i < k && i < items.size(); ++i) {
            const auto j = static_cast<std::size_t>(
                uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(items.size() - 1)));
            std::swap(items[i], items[j]);
        }
        items.resize(std::min(k, items.size()));
        return items;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace witness
