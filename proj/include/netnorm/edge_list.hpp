#pragma once

#include "netnorm/network.hpp"

#include <iosfwd>
#include <string>

namespace netnorm {

/** How to turn directed edge rows into an undirected weight */
enum class symmetrize_rule {
    or_rule,   // weight = max of the reported directions
    and_rule,  // weight = min, treating a missing direction as 0
    strict,    // both directions must be reported and equal
};

struct load_options {
    symmetrize_rule symmetrize = symmetrize_rule::or_rule;
    bool allow_zero_self_loops = false;  // drop (i,i,0) rows instead of erroring
};

/**
 * Read a network from CSV. Two layouts are accepted:
 *  - edge list with header "src,dst[,weight]"; missing weights default to 1;
 *    '#' starts a comment line; nodes are the sorted union of endpoints
 *  - square matrix with a leading label row and label column
 */
network load_network(std::istream &in, const load_options &options = {});

/** load_network from a file path */
network load_network_file(const std::string &path, const load_options &options = {});

/** Write the matrix layout (leading label row/column, shortest exact numbers) */
void save_matrix_csv(const network &net, std::ostream &out);

}  // namespace netnorm
