#include "hypersim/sim/round_log.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace hypersim::sim
{
    namespace
    {
        const char* kind_key(Address::Kind k)
        {
            switch (k)
            {
            case Address::Kind::Vertex:
                return "vertex";
            case Address::Kind::EdgeVertex:
                return "unicast";
            case Address::Kind::EdgeBroadcast:
                return "broadcast";
            }
            return "?";
        }

        Address::Kind parse_kind(const std::string& s)
        {
            if (s == "vertex")
                return Address::Kind::Vertex;
            if (s == "unicast")
                return Address::Kind::EdgeVertex;
            if (s == "broadcast")
                return Address::Kind::EdgeBroadcast;
            throw std::runtime_error("unknown frame kind \"" + s + "\"");
        }
    } // namespace

    std::string to_json_line(const FrameRecord& f)
    {
        nlohmann::ordered_json j;
        j["round"] = f.round;
        j["model"] = std::string(to_string(f.model));
        j["src"] = f.src;
        j["kind"] = kind_key(f.kind);
        j["port"] = f.port;
        j["edge"] = f.edge;
        j["target"] = f.target;
        j["bits"] = f.bits;
        return j.dump();
    }

    FrameRecord parse_json_line(const std::string& line)
    {
        try
        {
            auto j = nlohmann::json::parse(line);
            FrameRecord f;
            f.round = j.at("round").get<std::uint64_t>();
            auto model = parse_model(j.at("model").get<std::string>());
            if (!model)
                throw std::runtime_error("unknown model");
            f.model = *model;
            f.src = j.at("src").get<VertexId>();
            f.kind = parse_kind(j.at("kind").get<std::string>());
            f.port = j.at("port").get<Port>();
            f.edge = j.at("edge").get<EdgeIndex>();
            f.target = j.at("target").get<VertexId>();
            f.bits = j.at("bits").get<std::size_t>();
            return f;
        }
        catch (const nlohmann::json::exception& err)
        {
            throw std::runtime_error(std::string("malformed round-log line: ") + err.what());
        }
    }

    void RoundLogWriter::write(const FrameRecord& f)
    {
        *os_ << to_json_line(f) << '\n';
        ++frames_;
    }

    namespace
    {
        std::string check_round(std::uint64_t round, const std::vector<FrameRecord>& frames, const Hypergraph& h,
                                const Bandwidth& bw)
        {
            const std::string where = "round " + std::to_string(round) + ": ";
            std::map<VertexId, Outbox> outboxes;
            std::map<EdgeIndex, std::set<std::pair<VertexId, VertexId>>> edge_users;
            const ModelKind model = frames.front().model;
            for (const auto& f : frames)
            {
                if (f.model != model)
                    return where + "mixed models";
                if (f.bits > bw.bits)
                    return where + "frame of " + std::to_string(f.bits) + " bits exceeds B";
                if (f.src >= h.num_vertices())
                    return where + "source out of range";
                if (f.kind != Address::Kind::Vertex)
                {
                    if (f.port >= h.degree(f.src) || h.incident(f.src)[f.port] != f.edge)
                        return where + "edge/port mismatch for vertex " + std::to_string(f.src);
                    auto key = f.kind == Address::Kind::EdgeBroadcast ? std::pair{f.src, f.src}
                                                                      : unordered_pair(f.src, f.target);
                    edge_users[f.edge].insert(key);
                }
                outboxes[f.src].push(Address{f.kind, f.target, f.port}, Payload{});
            }
            for (const auto& [v, out] : outboxes)
                if (auto bad = validate_outbox(model, h, v, out))
                    return where + "vertex " + std::to_string(v) + ": " + bad->reason;
            if (model == ModelKind::EdgeSolocast || model == ModelKind::EdgePaircast)
                for (const auto& [e, users] : edge_users)
                    if (users.size() > 1)
                        return where + "edge " + std::to_string(e) + " used by more than one "
                               + (model == ModelKind::EdgeSolocast ? "broadcaster" : "pair");
            return {};
        }
    } // namespace

    ReplayReport replay_round_log(std::istream& in, const Hypergraph& h, const Bandwidth& bw)
    {
        std::map<std::uint64_t, std::vector<FrameRecord>> by_round;
        ReplayReport report;
        std::string line;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            auto f = parse_json_line(line);
            by_round[f.round].push_back(f);
            ++report.frames;
        }
        for (const auto& [round, frames] : by_round)
        {
            ++report.rounds;
            auto err = check_round(round, frames, h, bw);
            if (!err.empty())
            {
                report.ok = false;
                report.first_error = err;
                break;
            }
        }
        return report;
    }

} // namespace hypersim::sim
