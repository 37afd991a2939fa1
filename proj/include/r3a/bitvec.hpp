// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace r3a::vl {

// Four-state bit vector. Bit encoding follows the VPI aval/bval pair:
//   0=(0,0)  1=(1,0)  z=(0,1)  x=(1,1)
// Bit 0 is the LSB. Widths are arbitrary; arithmetic is unsigned.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int width, bool fill_x = false);

    static BitVec from_uint(int width, std::uint64_t value);
    // Parses a Verilog literal: 123, 4'b1010, 8'hXF, 'd42, with _ separators
    // and x/z/? digits. Throws std::invalid_argument on malformed text.
    static BitVec from_literal(std::string_view text);
    // msb-first string over {0,1,x,z}.
    static BitVec from_bits(std::string_view bits);

    int width() const { return width_; }
    bool empty() const { return width_ == 0; }

    char bit(int i) const;            // '0' '1' 'x' 'z'; i counts from LSB
    void set_bit(int i, char v);
    bool has_xz() const;
    bool is_all_x() const;

    // Low 64 bits as an unsigned integer; x/z bits read as 0.
    std::uint64_t to_uint() const;
    std::string to_bits() const;      // msb-first, full width
    std::string to_vcd() const;       // msb-first, leading bits trimmed per VCD

    // Truthiness under Verilog logical context: true if any bit is 1,
    // false if all bits are 0, otherwise unknown ('x').
    char truth() const;

    BitVec resized(int new_width) const;   // zero-extend or truncate
    BitVec slice(int lsb_offset, int count) const;
    void set_slice(int lsb_offset, const BitVec& v);

    // Exact (4-state) equality, the === relation.
    bool identical(const BitVec& o) const;
    bool operator==(const BitVec& o) const { return identical(o); }

private:
    int width_ = 0;
    std::vector<std::uint64_t> a_, b_;
    friend BitVec bit_not(const BitVec&);
    friend BitVec bitwise(char op, const BitVec&, const BitVec&);
    void clear_tail();
};

// Bitwise ops; operands are extended to the max width first.
BitVec bit_not(const BitVec& v);
BitVec bitwise(char op, const BitVec& lhs, const BitVec& rhs);  // & | ^ (n = xnor)
char reduce(char op, const BitVec& v);                          // & | ^

// Arithmetic; any x/z operand bit yields an all-x result of the given width.
BitVec arith(char op, const BitVec& lhs, const BitVec& rhs, int width);  // + - * / % p(ower)
BitVec negate(const BitVec& v, int width);

BitVec shift_left(const BitVec& v, const BitVec& amount, int width);
BitVec shift_right(const BitVec& v, const BitVec& amount, int width);

char logic_eq(const BitVec& lhs, const BitVec& rhs);   // ==  ('x' when ambiguous)
char logic_rel(std::string_view op, const BitVec& lhs, const BitVec& rhs);  // < <= > >=
char logic_and(char a, char b);
char logic_or(char a, char b);
char logic_not(char a);

BitVec concat(const std::vector<BitVec>& parts);  // parts[0] is the MSB part
// Ternary with unknown condition: bits equal in both arms survive, others x.
BitVec merge_unknown(const BitVec& then_v, const BitVec& else_v);

BitVec from_truth(char t);  // 1-bit vector from '0'/'1'/'x'

}  // namespace r3a::vl
