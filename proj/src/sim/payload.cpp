#include "hypersim/sim/payload.hpp"

#include <bit>

namespace hypersim::sim
{
    void Payload::push_bit(bool b)
    {
        if (size_ % 64 == 0)
            words_.push_back(0);
        if (b)
            words_.back() |= std::uint64_t{1} << (size_ % 64);
        ++size_;
    }

    void Payload::push(std::uint64_t value, unsigned width)
    {
        if (width < 64 && (value >> width) != 0)
            throw PayloadError("value " + std::to_string(value) + " does not fit in "
                               + std::to_string(width) + " bits");
        for (unsigned i = width; i-- > 0;)
            push_bit((value >> i) & 1U);
    }

    void Payload::push_gamma(std::uint64_t value)
    {
        const std::uint64_t x = value + 1;
        const unsigned len = static_cast<unsigned>(std::bit_width(x));
        for (unsigned i = 1; i < len; ++i)
            push_bit(false);
        push(x, len);
    }

    void Payload::append(const Payload& other)
    {
        for (std::size_t i = 0; i < other.size_; ++i)
            push_bit(other.bit(i));
    }

    bool Payload::operator==(const Payload& other) const
    {
        return size_ == other.size_ && words_ == other.words_;
    }

    bool Payload::Reader::bit()
    {
        if (pos_ >= p_->size_bits())
            throw PayloadError("read past end of payload");
        return p_->bit(pos_++);
    }

    std::uint64_t Payload::Reader::read(unsigned width)
    {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i)
            v = (v << 1) | static_cast<std::uint64_t>(bit());
        return v;
    }

    std::uint64_t Payload::Reader::read_gamma()
    {
        unsigned zeros = 0;
        while (!bit())
            ++zeros;
        std::uint64_t x = 1;
        for (unsigned i = 0; i < zeros; ++i)
            x = (x << 1) | static_cast<std::uint64_t>(bit());
        return x - 1;
    }

} // namespace hypersim::sim
