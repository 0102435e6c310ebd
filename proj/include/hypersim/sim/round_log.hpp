#ifndef HYPERSIM_SIM_ROUND_LOG_HPP
#define HYPERSIM_SIM_ROUND_LOG_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "hypersim/core/hypergraph.hpp"
#include "hypersim/sim/model.hpp"

namespace hypersim::sim
{
    /// One B-bit frame of a delivered message.
    struct FrameRecord
    {
        std::uint64_t round = 0;
        ModelKind model = ModelKind::Clique;
        VertexId src = 0;
        Address::Kind kind = Address::Kind::Vertex;
        Port port = 0;
        /// Global index of the carrying edge; unused for vertex-addressed frames.
        EdgeIndex edge = 0;
        VertexId target = 0;
        std::size_t bits = 0;
    };

    /// Line-delimited JSON, one object per frame.
    class RoundLogWriter
    {
    public:
        explicit RoundLogWriter(std::ostream& os) : os_(&os) {}
        void write(const FrameRecord& f);
        std::uint64_t frames() const { return frames_; }

    private:
        std::ostream* os_;
        std::uint64_t frames_ = 0;
    };

    std::string to_json_line(const FrameRecord& f);
    /// Throws std::runtime_error on malformed input.
    FrameRecord parse_json_line(const std::string& line);

    struct ReplayReport
    {
        std::uint64_t rounds = 0;
        std::uint64_t frames = 0;
        bool ok = true;
        std::string first_error;
    };

    /// Regroups frames by round and re-checks every round: per-vertex outbox legality,
    /// frame size <= B, and the per-edge single-sender / single-pair rules of ES and EP.
    ReplayReport replay_round_log(std::istream& in, const Hypergraph& h, const Bandwidth& bw);

} // namespace hypersim::sim

#endif // HYPERSIM_SIM_ROUND_LOG_HPP
