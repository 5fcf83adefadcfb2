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

#include "amc/randomness.hpp"

#include <fstream>
#include <iterator>
#include <random>

namespace amc {

RandomBitStream RandomBitStream::from_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open bit file '" + path + "'");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return RandomBitStream(std::move(bytes));
}

bool RandomBitStream::take_bit()
{
    if (cursor_ >= total_bits()) {
        throw InsufficientRandomness("insufficient randomness: bit " + std::to_string(cursor_)
                                     + " requested from a " + std::to_string(total_bits()) + "-bit stream");
    }
    uint8_t byte = bytes_[cursor_ / 8];
    bool bit = (byte >> (7 - cursor_ % 8)) & 1;
    cursor_++;
    return bit;
}

std::vector<bool> RandomBitStream::take_bits(size_t n)
{
    if (n > remaining()) {
        throw InsufficientRandomness("insufficient randomness: " + std::to_string(n) + " bits requested, "
                                     + std::to_string(remaining()) + " remain");
    }
    std::vector<bool> out;
    out.reserve(n);
    for (size_t i = 0; i < n; i++) out.push_back(take_bit());
    return out;
}

Xor sample_xor(RandomBitStream& stream, std::span<const Var> s)
{
    if (stream.remaining() < s.size() + 1) {
        throw InsufficientRandomness("insufficient randomness: XOR over " + std::to_string(s.size())
                                     + " variables needs " + std::to_string(s.size() + 1) + " bits, "
                                     + std::to_string(stream.remaining()) + " remain");
    }
    std::vector<Var> vars;
    for (Var v : s) {
        if (stream.take_bit()) vars.push_back(v);
    }
    bool rhs = stream.take_bit();
    return Xor(std::move(vars), rhs);
}

uint64_t required_bits(size_t proj_size, uint64_t rounds)
{
    if (proj_size == 0) return 0;
    return rounds * (proj_size - 1) * (proj_size + 1);
}

std::vector<std::vector<Xor>> random_seed_xors(RandomBitStream& stream, std::span<const Var> s, uint64_t rounds)
{
    std::vector<std::vector<Xor>> out;
    size_t per_round = s.empty() ? 0 : s.size() - 1;
    out.reserve(rounds);
    for (uint64_t r = 0; r < rounds; r++) {
        std::vector<Xor> xs;
        xs.reserve(per_round);
        for (size_t i = 0; i < per_round; i++) {
            try {
                xs.push_back(sample_xor(stream, s));
            } catch (const InsufficientRandomness& e) {
                throw InsufficientRandomness(std::string(e.what()) + " (round " + std::to_string(r + 1)
                                             + ", XOR " + std::to_string(i + 1) + ")");
            }
        }
        out.push_back(std::move(xs));
    }
    return out;
}

std::vector<bool> xor_hash(std::span<const Xor> xors, const Assignment& w)
{
    std::vector<bool> out;
    out.reserve(xors.size());
    for (const auto& x : xors) out.push_back(eval_xor(x, w));
    return out;
}

std::vector<uint8_t> os_random_bytes(size_t n)
{
    std::random_device rd;
    std::vector<uint8_t> out(n);
    size_t i = 0;
    while (i < n) {
        auto word = rd();
        for (int k = 0; k < 4 && i < n; k++, i++) out[i] = static_cast<uint8_t>(word >> (8 * k));
    }
    return out;
}

void write_bytes_file(const std::string& path, std::span<const uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace amc
