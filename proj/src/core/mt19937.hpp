#pragma once

#include <array>
#include <cstdint>

namespace ordstat {

/// Inverse standard normal cdf (Wichura's AS 241 PPND16 approximation).
/// Accurate to about 1e-16 relative over (0,1); throws for u outside (0,1).
double inverse_normal_cdf(double u);

/// 626-integer base-R seed state: codes[0] = 403 (generator tag),
/// codes[1] = 624 (cursor), codes[2..625] = generator words produced by
/// the 69069 LCG after 50 burn-in steps, folded into signed 32-bit range.
struct RSeedState {
    std::array<std::int32_t, 626> codes{};

    static RSeedState from_seed(std::int32_t seed);
};

class Mt19937;

/// Packs a generator state back into the R layout (bit-preserving words).
RSeedState r_state_of(const Mt19937 &gen);

/// MT19937 with both classic seeding and base-R state construction.
///
/// Two output transforms coexist because the environments differ:
/// next_uniform53() is the two-word 53-bit resolution double, while
/// next_r_uniform() is base R's single word / 2^32 with endpoint clamp.
class Mt19937 {
  public:
    static constexpr std::size_t word_count = 624;

    struct State {
        std::array<std::uint32_t, word_count> words{};
        std::size_t cursor = word_count;
    };

    explicit Mt19937(std::uint32_t seed);
    static Mt19937 from_r_seed(std::int32_t seed);
    static Mt19937 from_r_state(const RSeedState &r);

    std::uint32_t next_u32();

    /// (a*2^26 + b) / 2^53 with a = top 27 bits, b = top 26 bits of two
    /// successive tempered words; in [0,1).
    double next_uniform53();

    /// Base-R unif_rand: tempered word / 2^32, clamped into (0,1).
    double next_r_uniform();

    /// Phi^-1 applied to next_uniform53(); a zero draw is resampled.
    double next_normal_inversion();

    /// Base-R inversion normal: u = (floor(2^27*u1) + u2) / 2^27, Phi^-1(u).
    double next_r_normal();

    /// ceil(u*n) with u = next_uniform53(); integer in [1, n]. n >= 1.
    std::uint64_t uniform_int(std::uint64_t n);

    State state() const { return state_; }
    void set_state(const State &s) { state_ = s; }

  private:
    Mt19937() = default;
    void twist();

    State state_;
};

} // namespace ordstat
