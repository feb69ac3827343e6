#include "mt19937.hpp"

#include <cmath>
#include <stdexcept>

namespace ordstat {

namespace {

constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
constexpr std::uint32_t kUpperMask = 0x80000000u;
constexpr std::uint32_t kLowerMask = 0x7fffffffu;
constexpr std::size_t kM = 397;

// AS 241 (PPND16) rational approximations.
double ppnd16(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    if (r <= 0.0)
        throw std::domain_error("inverse_normal_cdf: argument must lie in (0,1)");
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return q < 0.0 ? -val : val;
}

std::int32_t int32_lcg(std::int32_t n) {
    // 69069*n + 1 with wraparound folded back into signed 32-bit range
    std::uint32_t u = 69069u * static_cast<std::uint32_t>(n) + 1u;
    return static_cast<std::int32_t>(u);
}

} // namespace

double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("inverse_normal_cdf: argument must lie in (0,1)");
    return ppnd16(u);
}

RSeedState RSeedState::from_seed(std::int32_t seed) {
    RSeedState st;
    std::int32_t n = seed;
    for (int i = 0; i < 50; ++i)
        n = int32_lcg(n);
    for (int i = 1; i < 626; ++i) {
        n = int32_lcg(n);
        st.codes[static_cast<std::size_t>(i)] = n;
    }
    st.codes[0] = 403;
    st.codes[1] = 624;
    return st;
}

RSeedState r_state_of(const Mt19937 &gen) {
    RSeedState st;
    const auto s = gen.state();
    st.codes[0] = 403;
    st.codes[1] = static_cast<std::int32_t>(s.cursor);
    for (std::size_t i = 0; i < Mt19937::word_count; ++i)
        st.codes[i + 2] = static_cast<std::int32_t>(s.words[i]);
    return st;
}

Mt19937::Mt19937(std::uint32_t seed) {
    auto &mt = state_.words;
    mt[0] = seed;
    for (std::size_t i = 1; i < word_count; ++i)
        mt[i] = 1812433253u * (mt[i - 1] ^ (mt[i - 1] >> 30)) +
                static_cast<std::uint32_t>(i);
    state_.cursor = word_count;
}

Mt19937 Mt19937::from_r_seed(std::int32_t seed) {
    return from_r_state(RSeedState::from_seed(seed));
}

Mt19937 Mt19937::from_r_state(const RSeedState &r) {
    if (r.codes[1] < 0 || r.codes[1] > static_cast<std::int32_t>(word_count))
        throw std::invalid_argument("mt_from_r_state: cursor out of range");
    Mt19937 g;
    for (std::size_t i = 0; i < word_count; ++i)
        g.state_.words[i] = static_cast<std::uint32_t>(r.codes[i + 2]);
    g.state_.cursor = static_cast<std::size_t>(r.codes[1]);
    return g;
}

void Mt19937::twist() {
    auto &mt = state_.words;
    const std::uint32_t mag01[2] = {0u, kMatrixA};
    std::size_t kk = 0;
    for (; kk < word_count - kM; ++kk) {
        std::uint32_t y = (mt[kk] & kUpperMask) | (mt[kk + 1] & kLowerMask);
        mt[kk] = mt[kk + kM] ^ (y >> 1) ^ mag01[y & 1u];
    }
    for (; kk < word_count - 1; ++kk) {
        std::uint32_t y = (mt[kk] & kUpperMask) | (mt[kk + 1] & kLowerMask);
        mt[kk] = mt[kk + kM - word_count] ^ (y >> 1) ^ mag01[y & 1u];
    }
    std::uint32_t y = (mt[word_count - 1] & kUpperMask) | (mt[0] & kLowerMask);
    mt[word_count - 1] = mt[kM - 1] ^ (y >> 1) ^ mag01[y & 1u];
    state_.cursor = 0;
}

std::uint32_t Mt19937::next_u32() {
    if (state_.cursor >= word_count)
        twist();
    std::uint32_t y = state_.words[state_.cursor++];
    y ^= y >> 11;
    y ^= (y << 7) & 0x9d2c5680u;
    y ^= (y << 15) & 0xefc60000u;
    y ^= y >> 18;
    return y;
}

double Mt19937::next_uniform53() {
    const std::uint32_t a = next_u32() >> 5;
    const std::uint32_t b = next_u32() >> 6;
    return (a * 67108864.0 + b) * (1.0 / 9007199254740992.0);
}

double Mt19937::next_r_uniform() {
    // one tempered word / 2^32, clamped into the open interval like base R
    constexpr double kInv32 = 2.3283064365386963e-10;   // 1/2^32
    constexpr double kI2_32m1 = 2.328306437080797e-10;  // 1/(2^32 - 1)
    double v = next_u32() * kInv32;
    if (v <= 0.0)
        return 0.5 * kI2_32m1;
    if (1.0 - v <= 0.0)
        return 1.0 - 0.5 * kI2_32m1;
    return v;
}

double Mt19937::next_normal_inversion() {
    double u = next_uniform53();
    while (u == 0.0)
        u = next_uniform53();
    return ppnd16(u);
}

double Mt19937::next_r_normal() {
    constexpr double kBig = 134217728.0; // 2^27
    double u1 = next_r_uniform();
    u1 = static_cast<double>(static_cast<int>(kBig * u1)) + next_r_uniform();
    return ppnd16(u1 / kBig);
}

std::uint64_t Mt19937::uniform_int(std::uint64_t n) {
    if (n < 1)
        throw std::invalid_argument("uniform_int: n must be >= 1");
    const double u = next_uniform53();
    auto k = static_cast<std::uint64_t>(std::ceil(u * static_cast<double>(n)));
    if (k < 1)
        return 1;
    if (k > n)
        return n;
    return k;
}

} // namespace ordstat
