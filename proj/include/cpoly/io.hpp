#ifndef CPOLY_IO_HPP
#define CPOLY_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "cpoly/cpolyhedron.hpp"

namespace cpoly {

/// Free-form string metadata carried by the cpoly/1 file format.
using Metadata = std::map<std::string, std::string>;

struct LoadResult {
    CPolyhedron polyhedron;
    Metadata metadata;
    std::vector<std::string> warnings;  // e.g. re-normalized disks
};

/// Serializes to the cpoly/1 JSON format. Numbers are written with 17
/// significant digits so the double payload round-trips exactly.
std::string to_cpoly_json(const CPolyhedron& P, const Metadata& metadata = {});

void save(const CPolyhedron& P, const std::string& path, const Metadata& metadata = {});

/// Parses and validates a cpoly/1 document. Disk vectors farther than 1e-8
/// from the de Sitter sphere are re-normalized with a warning up to 1e-4
/// and rejected beyond that.
LoadResult parse_cpoly_json(const std::string& text);

LoadResult load(const std::string& path);

}  // namespace cpoly

#endif
