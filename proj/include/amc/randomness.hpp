/******************************************
Copyright (C) 2026 Authors of amccert, see AUTHORS file

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
***********************************************/

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "amc/formula.hpp"

namespace amc {

class InsufficientRandomness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read-only view of a raw byte buffer consumed bit by bit, most
/// significant bit of each byte first. Reading past the end throws.
class RandomBitStream {
public:
    RandomBitStream() = default;
    explicit RandomBitStream(std::vector<uint8_t> bytes) : bytes_(std::move(bytes)) {}

    static RandomBitStream from_file(const std::string& path);

    bool take_bit();
    std::vector<bool> take_bits(size_t n);

    size_t position() const { return cursor_; }
    size_t total_bits() const { return bytes_.size() * 8; }
    size_t remaining() const { return total_bits() - cursor_; }

private:
    std::vector<uint8_t> bytes_;
    size_t cursor_ = 0;
};

/// Reads |S| membership bits in the order of `s`, then the rhs bit.
Xor sample_xor(RandomBitStream& stream, std::span<const Var> s);

/// Number of bits random_seed_xors consumes: t * (|S|-1) * (|S|+1).
uint64_t required_bits(size_t proj_size, uint64_t rounds);

/// Eagerly samples `rounds` lists of |S|-1 XORs, round-major.
std::vector<std::vector<Xor>> random_seed_xors(RandomBitStream& stream, std::span<const Var> s, uint64_t rounds);

/// Bit i is set iff `w` satisfies xors[i].
std::vector<bool> xor_hash(std::span<const Xor> xors, const Assignment& w);

/// Bytes drawn from the operating system's entropy source.
std::vector<uint8_t> os_random_bytes(size_t n);

void write_bytes_file(const std::string& path, std::span<const uint8_t> bytes);

}  // namespace amc
