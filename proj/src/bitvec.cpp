// SPDX-License-Identifier: Apache-2.0
#include "r3a/bitvec.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace r3a::vl {

namespace {
constexpr int kWordBits = 64;
int word_count(int width) { return (width + kWordBits - 1) / kWordBits; }
}  // namespace

BitVec::BitVec(int width, bool fill_x) : width_(width) {
    if (width < 0) throw std::invalid_argument("negative BitVec width");
    a_.assign(word_count(width), fill_x ? ~0ull : 0ull);
    b_.assign(word_count(width), fill_x ? ~0ull : 0ull);
    clear_tail();
}

void BitVec::clear_tail() {
    if (width_ == 0 || a_.empty()) return;
    int tail = width_ % kWordBits;
    if (tail != 0) {
        std::uint64_t mask = (~0ull) >> (kWordBits - tail);
        a_.back() &= mask;
        b_.back() &= mask;
    }
}

BitVec BitVec::from_uint(int width, std::uint64_t value) {
    BitVec v(width);
    if (!v.a_.empty()) v.a_[0] = value;
    for (std::size_t i = 1; i < v.a_.size(); ++i) v.a_[i] = 0;
    v.clear_tail();
    return v;
}

BitVec BitVec::from_bits(std::string_view bits) {
    BitVec v(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i)
        v.set_bit(static_cast<int>(bits.size() - 1 - i), bits[i]);
    return v;
}

char BitVec::bit(int i) const {
    if (i < 0 || i >= width_) return 'x';
    bool a = (a_[i / kWordBits] >> (i % kWordBits)) & 1;
    bool b = (b_[i / kWordBits] >> (i % kWordBits)) & 1;
    if (!b) return a ? '1' : '0';
    return a ? 'x' : 'z';
}

void BitVec::set_bit(int i, char v) {
    if (i < 0 || i >= width_) return;
    bool a = false, b = false;
    switch (v) {
        case '0': break;
        case '1': a = true; break;
        case 'z': case 'Z': b = true; break;
        case 'x': case 'X': case '?': a = b = true; break;
        default: throw std::invalid_argument("bad bit char");
    }
    std::uint64_t mask = 1ull << (i % kWordBits);
    if (a) a_[i / kWordBits] |= mask; else a_[i / kWordBits] &= ~mask;
    if (b) b_[i / kWordBits] |= mask; else b_[i / kWordBits] &= ~mask;
}

bool BitVec::has_xz() const {
    for (auto w : b_)
        if (w != 0) return true;
    return false;
}

bool BitVec::is_all_x() const {
    if (width_ == 0) return false;
    for (int i = 0; i < width_; ++i)
        if (bit(i) != 'x') return false;
    return true;
}

std::uint64_t BitVec::to_uint() const {
    if (a_.empty()) return 0;
    std::uint64_t v = a_[0] & ~b_[0];
    if (width_ < kWordBits) v &= (~0ull) >> (kWordBits - width_);
    return v;
}

std::string BitVec::to_bits() const {
    std::string out(width_, '0');
    for (int i = 0; i < width_; ++i) out[width_ - 1 - i] = bit(i);
    return out;
}

std::string BitVec::to_vcd() const {
    std::string full = to_bits();
    // VCD trims leading bits that repeat the extension rule; keep it simple
    // and only trim redundant leading zeros down to one digit.
    std::size_t keep = full.find_first_not_of('0');
    if (keep == std::string::npos) return "0";
    return full.substr(keep);
}

char BitVec::truth() const {
    bool any_x = false;
    for (int i = 0; i < width_; ++i) {
        char c = bit(i);
        if (c == '1') return '1';
        if (c != '0') any_x = true;
    }
    return any_x ? 'x' : '0';
}

BitVec BitVec::resized(int new_width) const {
    BitVec out(new_width);
    int n = std::min(width_, new_width);
    for (int i = 0; i < n; ++i) out.set_bit(i, bit(i));
    return out;
}

BitVec BitVec::slice(int lsb_offset, int count) const {
    BitVec out(count, /*fill_x=*/true);
    for (int i = 0; i < count; ++i) {
        int src = lsb_offset + i;
        if (src >= 0 && src < width_) out.set_bit(i, bit(src));
    }
    return out;
}

void BitVec::set_slice(int lsb_offset, const BitVec& v) {
    for (int i = 0; i < v.width(); ++i) {
        int dst = lsb_offset + i;
        if (dst >= 0 && dst < width_) set_bit(dst, v.bit(i));
    }
}

bool BitVec::identical(const BitVec& o) const {
    return width_ == o.width_ && a_ == o.a_ && b_ == o.b_;
}

BitVec BitVec::from_literal(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != '_') s += c;
    if (s.empty()) throw std::invalid_argument("empty literal");

    std::size_t quote = s.find('\'');
    if (quote == std::string::npos) {
        // plain decimal, 32 bits
        std::uint64_t v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad decimal literal: " + s);
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return from_uint(32, v);
    }

    int width = 32;
    if (quote > 0) width = std::stoi(s.substr(0, quote));
    if (width <= 0) throw std::invalid_argument("bad literal width: " + s);
    if (quote + 1 >= s.size()) throw std::invalid_argument("truncated literal: " + s);
    std::size_t p = quote + 1;
    if (s[p] == 's' || s[p] == 'S') ++p;  // signedness marker, value unchanged
    if (p >= s.size()) throw std::invalid_argument("truncated literal: " + s);
    char base = static_cast<char>(std::tolower(static_cast<unsigned char>(s[p])));
    std::string digits = s.substr(p + 1);
    if (digits.empty()) throw std::invalid_argument("literal has no digits: " + s);

    BitVec v(width);
    auto digit_bits = [&](char base_c) {
        switch (base_c) {
            case 'b': return 1;
            case 'o': return 3;
            case 'h': return 4;
            default: return 0;
        }
    };

    if (base == 'd') {
        char lead = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[0])));
        if (lead == 'x' || lead == 'z') {
            for (int i = 0; i < width; ++i) v.set_bit(i, lead);
            return v;
        }
        std::uint64_t value = 0;
        for (char c : digits) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad decimal digits: " + s);
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return from_uint(width, value);
    }

    int bits_per = digit_bits(base);
    if (bits_per == 0) throw std::invalid_argument("bad literal base: " + s);
    int pos = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
        if (c == 'x' || c == 'z' || c == '?') {
            char fill = (c == '?') ? 'z' : c;
            for (int i = 0; i < bits_per; ++i) v.set_bit(pos + i, fill);
        } else {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else throw std::invalid_argument("bad digit in literal: " + s);
            if (d >= (1 << bits_per))
                throw std::invalid_argument("digit out of base range: " + s);
            for (int i = 0; i < bits_per; ++i)
                v.set_bit(pos + i, (d >> i) & 1 ? '1' : '0');
        }
        pos += bits_per;
        if (pos >= width) break;
    }
    return v;
}

// --- operations ----------------------------------------------------------

BitVec bit_not(const BitVec& v) {
    BitVec out(v.width());
    for (int i = 0; i < v.width(); ++i) {
        char c = v.bit(i);
        out.set_bit(i, c == '0' ? '1' : c == '1' ? '0' : 'x');
    }
    return out;
}

namespace {
char bit_and(char a, char b) {
    if (a == '0' || b == '0') return '0';
    if (a == '1' && b == '1') return '1';
    return 'x';
}
char bit_or(char a, char b) {
    if (a == '1' || b == '1') return '1';
    if (a == '0' && b == '0') return '0';
    return 'x';
}
char bit_xor(char a, char b) {
    if ((a == 'x' || a == 'z') || (b == 'x' || b == 'z')) return 'x';
    return a == b ? '0' : '1';
}
}  // namespace

BitVec bitwise(char op, const BitVec& lhs, const BitVec& rhs) {
    int w = std::max(lhs.width(), rhs.width());
    BitVec l = lhs.resized(w), r = rhs.resized(w), out(w);
    for (int i = 0; i < w; ++i) {
        char a = l.bit(i), b = r.bit(i);
        char c;
        switch (op) {
            case '&': c = bit_and(a, b); break;
            case '|': c = bit_or(a, b); break;
            case '^': c = bit_xor(a, b); break;
            case 'n': c = logic_not(bit_xor(a, b)); break;
            default: throw std::invalid_argument("bad bitwise op");
        }
        out.set_bit(i, c);
    }
    return out;
}

char reduce(char op, const BitVec& v) {
    if (v.width() == 0) return 'x';
    char acc = v.bit(0);
    if (acc == 'z') acc = 'x';
    for (int i = 1; i < v.width(); ++i) {
        char b = v.bit(i);
        if (b == 'z') b = 'x';
        switch (op) {
            case '&': acc = bit_and(acc, b); break;
            case '|': acc = bit_or(acc, b); break;
            case '^': acc = bit_xor(acc, b); break;
            default: throw std::invalid_argument("bad reduce op");
        }
    }
    return acc;
}

namespace {
// Unsigned multiword helpers on the aval words of x/z-free vectors.
std::vector<std::uint64_t> words_of(const BitVec& v, int width) {
    BitVec r = v.resized(width);
    std::vector<std::uint64_t> out(word_count(width), 0);
    for (int i = 0; i < width; ++i)
        if (r.bit(i) == '1') out[i / kWordBits] |= 1ull << (i % kWordBits);
    return out;
}
BitVec from_words(const std::vector<std::uint64_t>& w, int width) {
    BitVec out(width);
    for (int i = 0; i < width; ++i)
        if ((w[i / kWordBits] >> (i % kWordBits)) & 1) out.set_bit(i, '1');
    return out;
}
int compare_words(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = n; i-- > 0;) {
        std::uint64_t va = i < a.size() ? a[i] : 0, vb = i < b.size() ? b[i] : 0;
        if (va != vb) return va < vb ? -1 : 1;
    }
    return 0;
}
}  // namespace

BitVec arith(char op, const BitVec& lhs, const BitVec& rhs, int width) {
    if (lhs.has_xz() || rhs.has_xz()) return BitVec(width, /*fill_x=*/true);
    int w = std::max({lhs.width(), rhs.width(), width});
    auto a = words_of(lhs, w), b = words_of(rhs, w);
    std::vector<std::uint64_t> r(a.size(), 0);
    switch (op) {
        case '+': {
            unsigned __int128 carry = 0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                unsigned __int128 s = (unsigned __int128)a[i] + b[i] + carry;
                r[i] = static_cast<std::uint64_t>(s);
                carry = s >> 64;
            }
            break;
        }
        case '-': {
            unsigned __int128 borrow = 0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                unsigned __int128 d = (unsigned __int128)a[i] - b[i] - borrow;
                r[i] = static_cast<std::uint64_t>(d);
                borrow = (d >> 64) ? 1 : 0;
            }
            break;
        }
        case '*': {
            for (std::size_t i = 0; i < a.size(); ++i) {
                unsigned __int128 carry = 0;
                for (std::size_t j = 0; i + j < r.size(); ++j) {
                    unsigned __int128 cur = (unsigned __int128)a[i] * (j < b.size() ? b[j] : 0) +
                                            r[i + j] + carry;
                    r[i + j] = static_cast<std::uint64_t>(cur);
                    carry = cur >> 64;
                }
            }
            break;
        }
        case '/':
        case '%': {
            // long division, bit at a time; widths here are small
            if (compare_words(b, std::vector<std::uint64_t>(b.size(), 0)) == 0)
                return BitVec(width, /*fill_x=*/true);
            std::vector<std::uint64_t> q(a.size(), 0), rem(a.size(), 0);
            for (int i = w - 1; i >= 0; --i) {
                // rem <<= 1 | a[i]
                std::uint64_t carry = (a[i / kWordBits] >> (i % kWordBits)) & 1;
                for (std::size_t j = 0; j < rem.size(); ++j) {
                    std::uint64_t next = rem[j] >> 63;
                    rem[j] = (rem[j] << 1) | carry;
                    carry = next;
                }
                if (compare_words(rem, b) >= 0) {
                    // rem -= b
                    std::uint64_t borrow = 0;
                    for (std::size_t j = 0; j < rem.size(); ++j) {
                        std::uint64_t vb = j < b.size() ? b[j] : 0;
                        unsigned __int128 d = (unsigned __int128)rem[j] - vb - borrow;
                        rem[j] = static_cast<std::uint64_t>(d);
                        borrow = (d >> 64) ? 1 : 0;
                    }
                    q[i / kWordBits] |= 1ull << (i % kWordBits);
                }
            }
            r = (op == '/') ? q : rem;
            break;
        }
        case 'p': {
            // exponent fits in uint64 for any sane fixture
            std::uint64_t e = rhs.to_uint();
            BitVec acc = BitVec::from_uint(w, 1);
            BitVec base = lhs.resized(w);
            while (e > 0) {
                if (e & 1) acc = arith('*', acc, base, w);
                base = arith('*', base, base, w);
                e >>= 1;
            }
            return acc.resized(width);
        }
        default:
            throw std::invalid_argument("bad arith op");
    }
    return from_words(r, w).resized(width);
}

BitVec negate(const BitVec& v, int width) {
    return arith('-', BitVec::from_uint(width, 0), v, width);
}

BitVec shift_left(const BitVec& v, const BitVec& amount, int width) {
    if (amount.has_xz()) return BitVec(width, /*fill_x=*/true);
    std::uint64_t n = amount.to_uint();
    BitVec out(width);
    for (int i = 0; i < width; ++i) {
        if (static_cast<std::uint64_t>(i) < n) { out.set_bit(i, '0'); continue; }
        int src = i - static_cast<int>(n);
        out.set_bit(i, src < v.width() ? v.bit(src) : '0');
    }
    return out;
}

BitVec shift_right(const BitVec& v, const BitVec& amount, int width) {
    if (amount.has_xz()) return BitVec(width, /*fill_x=*/true);
    std::uint64_t n = amount.to_uint();
    BitVec out(width);
    for (int i = 0; i < width; ++i) {
        std::uint64_t src = static_cast<std::uint64_t>(i) + n;
        out.set_bit(i, src < static_cast<std::uint64_t>(v.width())
                           ? v.bit(static_cast<int>(src)) : '0');
    }
    return out;
}

char logic_eq(const BitVec& lhs, const BitVec& rhs) {
    int w = std::max(lhs.width(), rhs.width());
    BitVec l = lhs.resized(w), r = rhs.resized(w);
    bool unknown = false;
    for (int i = 0; i < w; ++i) {
        char a = l.bit(i), b = r.bit(i);
        if (a == 'x' || a == 'z' || b == 'x' || b == 'z') { unknown = true; continue; }
        if (a != b) return '0';
    }
    return unknown ? 'x' : '1';
}

char logic_rel(std::string_view op, const BitVec& lhs, const BitVec& rhs) {
    if (lhs.has_xz() || rhs.has_xz()) return 'x';
    int w = std::max(lhs.width(), rhs.width());
    auto a = words_of(lhs, w), b = words_of(rhs, w);
    int c = compare_words(a, b);
    bool res;
    if (op == "<") res = c < 0;
    else if (op == "<=") res = c <= 0;
    else if (op == ">") res = c > 0;
    else if (op == ">=") res = c >= 0;
    else throw std::invalid_argument("bad relational op");
    return res ? '1' : '0';
}

char logic_and(char a, char b) { return bit_and(a, b); }
char logic_or(char a, char b) { return bit_or(a, b); }
char logic_not(char a) { return a == '0' ? '1' : a == '1' ? '0' : 'x'; }

BitVec concat(const std::vector<BitVec>& parts) {
    int total = 0;
    for (const auto& p : parts) total += p.width();
    BitVec out(total);
    int pos = total;
    for (const auto& p : parts) {
        pos -= p.width();
        out.set_slice(pos, p);
    }
    return out;
}

BitVec merge_unknown(const BitVec& then_v, const BitVec& else_v) {
    int w = std::max(then_v.width(), else_v.width());
    BitVec l = then_v.resized(w), r = else_v.resized(w), out(w);
    for (int i = 0; i < w; ++i) {
        char a = l.bit(i), b = r.bit(i);
        out.set_bit(i, (a == b && (a == '0' || a == '1')) ? a : 'x');
    }
    return out;
}

BitVec from_truth(char t) {
    BitVec v(1);
    v.set_bit(0, t);
    return v;
}

}  // namespace r3a::vl
