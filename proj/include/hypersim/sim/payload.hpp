#ifndef HYPERSIM_SIM_PAYLOAD_HPP
#define HYPERSIM_SIM_PAYLOAD_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hypersim::sim
{
    /// Append-only bit string. Everything a vertex sends is encoded here, so the kernel's
    /// bit accounting reflects the actual encoding.
    class Payload
    {
    public:
        std::size_t size_bits() const { return size_; }
        bool empty() const { return size_ == 0; }

        void push_bit(bool b);
        /// Low `width` bits of `value`, most significant first. Throws if value does not fit.
        void push(std::uint64_t value, unsigned width);
        /// Elias-gamma code of value + 1; self-delimiting, 2*floor(log2(value+1)) + 1 bits.
        void push_gamma(std::uint64_t value);
        void append(const Payload& other);

        bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

        bool operator==(const Payload& other) const;

        class Reader
        {
        public:
            explicit Reader(const Payload& p) : p_(&p) {}
            bool bit();
            std::uint64_t read(unsigned width);
            std::uint64_t read_gamma();
            std::size_t remaining() const { return p_->size_bits() - pos_; }
            bool done() const { return pos_ == p_->size_bits(); }

        private:
            const Payload* p_;
            std::size_t pos_ = 0;
        };

        Reader reader() const { return Reader(*this); }

    private:
        std::vector<std::uint64_t> words_;
        std::size_t size_ = 0;
    };

    class PayloadError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_PAYLOAD_HPP
