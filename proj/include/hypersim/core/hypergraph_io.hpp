#ifndef HYPERSIM_CORE_HYPERGRAPH_IO_HPP
#define HYPERSIM_CORE_HYPERGRAPH_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hypersim/core/hypergraph.hpp"

namespace hypersim
{
    class FormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Text format:
    //   # comments anywhere
    //   n m
    //   <m lines of space-separated vertex ids>
    //   # key=value metadata comments after the edges

    void write_hypergraph(std::ostream& os, const Hypergraph& h);
    std::string to_text(const Hypergraph& h);

    /// Accepts edges and vertices in any order; "# key=value" comments become metadata.
    Hypergraph read_hypergraph(std::istream& is);
    Hypergraph read_hypergraph_file(const std::string& path);
    void write_hypergraph_file(const std::string& path, const Hypergraph& h);

} // namespace hypersim

#endif // HYPERSIM_CORE_HYPERGRAPH_IO_HPP
