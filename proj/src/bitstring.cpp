#include "tracelab/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracelab {

BitString::BitString(std::string_view ascii) {
    words_.reserve((ascii.size() + 63) / 64);
    for (char c : ascii) {
        if (c == '0') {
            push_back(0);
        } else if (c == '1') {
            push_back(1);
        } else {
            throw std::invalid_argument("BitString: expected only '0'/'1' characters");
        }
    }
}

BitString BitString::from_value(std::uint64_t value, int length) {
    if (length < 0 || length > 64) throw std::invalid_argument("BitString::from_value: bad length");
    BitString s;
    for (int i = 0; i < length; ++i) s.push_back(static_cast<int>((value >> i) & 1u));
    return s;
}

void BitString::push_back(int b) {
    if ((len_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= (1ull << (len_ & 63));
    ++len_;
}

BitString BitString::slice1(long a, long b) const {
    a = std::max<long>(a, 1);
    b = std::min<long>(b, static_cast<long>(len_));
    BitString out;
    for (long i = a; i <= b; ++i) out.push_back(bit1(static_cast<std::size_t>(i)));
    return out;
}

std::string BitString::str() const {
    std::string s;
    s.reserve(len_);
    for (std::size_t i = 0; i < len_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

std::size_t BitString::count_ones() const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        if (i + 1 == words_.size() && (len_ & 63) != 0) w &= (1ull << (len_ & 63)) - 1;
        total += static_cast<std::size_t>(__builtin_popcountll(w));
    }
    return total;
}

bool BitString::operator<(const BitString& o) const {
    if (len_ != o.len_) return len_ < o.len_;
    for (std::size_t i = 0; i < len_; ++i) {
        if (bit(i) != o.bit(i)) return bit(i) < o.bit(i);
    }
    return false;
}

long contiguous_01_count(const BitString& w) {
    long count = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w.bit(i) == 0 && w.bit(i + 1) == 1) ++count;
    }
    return count;
}

Bigint subsequence_count_oracle(const BitString& w, const BitString& z) {
    const std::size_t m = w.size();
    if (m > z.size()) return 0;
    // dp[i] = number of embeddings of w_{1..i} into the scanned prefix of z.
    std::vector<Bigint> dp(m + 1);
    dp[0] = 1;
    for (std::size_t p = 0; p < z.size(); ++p) {
        int c = z.bit(p);
        std::size_t top = std::min(m, p + 1);
        for (std::size_t i = top; i >= 1; --i) {
            if (w.bit(i - 1) == c) dp[i] += dp[i - 1];
        }
    }
    return dp[m];
}

std::uint64_t subseq_count_u64(const BitString& w, const BitString& z) {
    const std::size_t m = w.size();
    if (m > z.size()) return 0;
    std::vector<std::uint64_t> dp(m + 1, 0);
    dp[0] = 1;
    for (std::size_t p = 0; p < z.size(); ++p) {
        int c = z.bit(p);
        std::size_t top = std::min(m, p + 1);
        for (std::size_t i = top; i >= 1; --i) {
            if (w.bit(i - 1) == c) dp[i] += dp[i - 1];
        }
    }
    return dp[m];
}

long hamming_distance(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    long d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += (x.bit(i) != y.bit(i));
    return d;
}

namespace {

void append_zigzag(BitString& s, long pairs) {
    for (long i = 0; i < pairs; ++i) {
        s.push_back(0);
        s.push_back(1);
    }
}

}  // namespace

PaddedPair make_padded_pair(long k) {
    if (k < 1) throw std::invalid_argument("make_padded_pair: k must be >= 1");
    PaddedPair pair;
    pair.k = k;
    pair.n = 4 * k + 3;
    append_zigzag(pair.x, k);
    pair.x.push_back(1);
    append_zigzag(pair.x, k + 1);
    append_zigzag(pair.y, k + 1);
    pair.y.push_back(1);
    append_zigzag(pair.y, k);
    return pair;
}

std::optional<EadWitness> is_ead_pair(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) throw std::invalid_argument("is_ead_pair: length mismatch");
    const long n = static_cast<long>(x.size());
    long first = 0, last = 0;  // 1-based positions of first/last disagreement
    for (long i = 1; i <= n; ++i) {
        if (x.bit1(i) != y.bit1(i)) {
            if (first == 0) first = i;
            last = i;
        }
    }
    if (first == 0) return std::nullopt;  // x == y
    for (long i = first; i <= last; ++i) {
        if (x.bit1(i) == y.bit1(i)) return std::nullopt;
    }
    return EadWitness{first - 1, last + 1};
}

EadPair make_ead_pair(const BitString& prefix, const BitString& x_middle, const BitString& suffix) {
    if (x_middle.empty()) throw std::invalid_argument("make_ead_pair: middle must be nonempty");
    EadPair pair;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        pair.x.push_back(prefix.bit(i));
        pair.y.push_back(prefix.bit(i));
    }
    for (std::size_t i = 0; i < x_middle.size(); ++i) {
        pair.x.push_back(x_middle.bit(i));
        pair.y.push_back(1 - x_middle.bit(i));
    }
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        pair.x.push_back(suffix.bit(i));
        pair.y.push_back(suffix.bit(i));
    }
    pair.k1 = static_cast<long>(prefix.size());
    pair.k2 = static_cast<long>(prefix.size() + x_middle.size()) + 1;
    return pair;
}

}  // namespace tracelab
