#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sqa {

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingJudgment : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateJudgment : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PairwiseMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> entries;  // n x n, reciprocal, positive

    size_t order() const { return labels.size(); }
};

struct WeightVector {
    std::vector<std::string> labels;
    std::vector<double> weights;  // sums to 1
    double lambda_max = 0.0;
    double consistency_ratio = 0.0;
};

// Empty iff the matrix is square (n >= 2), positive, unit-diagonal and
// reciprocal within 1e-9.
std::vector<std::string> validate_matrix(const PairwiseMatrix& m);

// Power iteration for the dominant eigenvector of a positive reciprocal
// matrix. Throws NonConvergence past max_iterations and InvalidMatrix on a
// matrix that fails validation.
WeightVector principal_eigenvector(const PairwiseMatrix& m, double tolerance = 1e-10,
                                   int max_iterations = 10000);

// CI = (lambda_max - n)/(n - 1), CR = CI/RI(n); 0 by definition for n = 2.
// Throws UnknownOrder for n > 10.
double consistency_ratio(const PairwiseMatrix& m, double lambda_max);

struct Judgment {
    size_t row = 0;
    size_t col = 0;
    double ratio = 1.0;
};

PairwiseMatrix matrix_from_judgments(const std::vector<std::string>& criteria,
                                     const std::vector<Judgment>& judgments);

// Assembles the matrix, extracts weights and attaches the consistency ratio.
// When warning is non-null it receives a message for CR > 0.1.
WeightVector weights_from_judgments(const std::vector<std::string>& criteria,
                                    const std::vector<Judgment>& judgments,
                                    std::string* warning = nullptr);

}  // namespace sqa
