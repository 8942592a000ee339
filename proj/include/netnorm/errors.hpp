#pragma once

#include <stdexcept>
#include <string>

namespace netnorm {

/** Base class for all library errors */
class error : public std::runtime_error {
  public:
    explicit error(const std::string &what) : std::runtime_error(what) {}
};

/** Matrix is not exactly symmetric */
class asymmetric_matrix_error : public error {
  public:
    asymmetric_matrix_error(long i, long j)
        : error("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")"),
          i_(i), j_(j) {}
    long i() const { return i_; }
    long j() const { return j_; }

  private:
    long i_, j_;
};

/** Diagonal entry is nonzero (self-link) */
class nonzero_diagonal_error : public error {
  public:
    explicit nonzero_diagonal_error(long i)
        : error("diagonal entry " + std::to_string(i) + " is nonzero"), i_(i) {}
    long i() const { return i_; }

  private:
    long i_;
};

/** NaN or infinity in a weight matrix */
class nonfinite_entry_error : public error {
  public:
    nonfinite_entry_error(long i, long j)
        : error("non-finite entry at (" + std::to_string(i) + "," + std::to_string(j) + ")") {}
};

/** Node labels are not pairwise distinct */
class duplicate_label_error : public error {
  public:
    explicit duplicate_label_error(const std::string &label)
        : error("duplicate node label '" + label + "'"), label_(label) {}
    const std::string &label() const { return label_; }

  private:
    std::string label_;
};

/** The two networks of a pair do not share a label set or size */
class label_mismatch_error : public error {
  public:
    explicit label_mismatch_error(const std::string &detail)
        : error("network labels do not match: " + detail) {}
};

/** Operand dimensions disagree */
class size_mismatch_error : public error {
  public:
    size_mismatch_error(long a, long b)
        : error("size mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/** Malformed input file */
class parse_error : public error {
  public:
    parse_error(long line, const std::string &what)
        : error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
    long line() const { return line_; }

  private:
    long line_;
};

/** The same (src,dst) pair appears twice in an edge list */
class duplicate_edge_error : public error {
  public:
    duplicate_edge_error(const std::string &src, const std::string &dst)
        : error("duplicate edge " + src + " -> " + dst) {}
};

/** Edge list contains a self loop */
class self_loop_error : public error {
  public:
    explicit self_loop_error(const std::string &node)
        : error("self loop on node '" + node + "'") {}
};

/** Negative weight where a nonnegative one is required */
class negative_weight_error : public error {
  public:
    negative_weight_error(long i, long j)
        : error("negative weight at (" + std::to_string(i) + "," + std::to_string(j) + ")") {}
};

/** Iterative method failed to converge */
class no_convergence_error : public error {
  public:
    explicit no_convergence_error(long max_iter)
        : error("iteration did not converge within " + std::to_string(max_iter) + " steps"),
          max_iter_(max_iter) {}
    long max_iter() const { return max_iter_; }

  private:
    long max_iter_;
};

/** Problem exceeds an enumeration cap */
class too_large_error : public error {
  public:
    too_large_error(long n, long cap)
        : error("problem size " + std::to_string(n) + " exceeds cap " + std::to_string(cap)) {}
};

/** Probability outside [0,1] */
class invalid_probability_error : public error {
  public:
    explicit invalid_probability_error(double p)
        : error("invalid probability " + std::to_string(p)) {}
};

/** Bad test or solver parameters */
class invalid_params_error : public error {
  public:
    explicit invalid_params_error(const std::string &what) : error(what) {}
};

}  // namespace netnorm
