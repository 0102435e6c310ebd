#include "hypersim/core/hypergraph_io.hpp"

#include <fstream>
#include <sstream>

namespace hypersim
{
    void write_hypergraph(std::ostream& os, const Hypergraph& h)
    {
        os << h.num_vertices() << ' ' << h.num_edges() << '\n';
        for (const auto& e : h.edges())
        {
            for (std::size_t i = 0; i < e.size(); ++i)
                os << (i ? " " : "") << e[i];
            os << '\n';
        }
        for (const auto& [key, value] : h.metadata())
            os << "# " << key << '=' << value << '\n';
    }

    std::string to_text(const Hypergraph& h)
    {
        std::ostringstream os;
        write_hypergraph(os, h);
        return os.str();
    }

    namespace
    {
        std::string trim(const std::string& s)
        {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }
    } // namespace

    Hypergraph read_hypergraph(std::istream& is)
    {
        std::map<std::string, std::string> meta;
        std::string line;
        std::size_t line_no = 0;
        bool have_header = false;
        std::size_t n = 0;
        std::size_t m = 0;
        std::vector<VertexSet> edges;

        while (std::getline(is, line))
        {
            ++line_no;
            auto text = trim(line);
            if (text.empty())
                continue;
            if (text[0] == '#')
            {
                auto body = trim(text.substr(1));
                auto eq = body.find('=');
                if (eq != std::string::npos && body.find(' ') > eq)
                    meta[body.substr(0, eq)] = body.substr(eq + 1);
                continue;
            }
            std::istringstream ls(text);
            if (!have_header)
            {
                if (!(ls >> n >> m))
                    throw FormatError("line " + std::to_string(line_no) + ": expected header \"n m\"");
                have_header = true;
                continue;
            }
            VertexSet e;
            long long v;
            while (ls >> v)
            {
                if (v < 0)
                    throw FormatError("line " + std::to_string(line_no) + ": negative vertex id");
                e.push_back(static_cast<VertexId>(v));
            }
            if (!ls.eof())
                throw FormatError("line " + std::to_string(line_no) + ": malformed vertex list");
            edges.push_back(std::move(e));
        }
        if (!have_header)
            throw FormatError("missing header line");
        if (edges.size() != m)
            throw FormatError("header declares " + std::to_string(m) + " edges, found "
                              + std::to_string(edges.size()));
        Hypergraph h;
        try
        {
            h = Hypergraph::build(n, std::move(edges));
        }
        catch (const std::invalid_argument& err)
        {
            throw FormatError(err.what());
        }
        h.metadata() = std::move(meta);
        return h;
    }

    Hypergraph read_hypergraph_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw FormatError("cannot open " + path);
        return read_hypergraph(in);
    }

    void write_hypergraph_file(const std::string& path, const Hypergraph& h)
    {
        std::ofstream out(path);
        if (!out)
            throw FormatError("cannot write " + path);
        write_hypergraph(out, h);
    }

} // namespace hypersim
