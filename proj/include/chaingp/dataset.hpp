// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_DATASET_HPP
#define CHAINGP_DATASET_HPP

#include "chaingp/common.hpp"

#include <string>

namespace chaingp {

/// Input points and scalar outputs observed on one code.
struct Dataset {
    Mat inputs;   // N x d, one row per observation
    Vec outputs;  // N

    int size() const { return static_cast<int>(inputs.rows()); }
    int dim() const { return static_cast<int>(inputs.cols()); }

    void append(const Vec& x, double y) {
        if (inputs.rows() > 0 && x.size() != inputs.cols())
            throw DimensionError("Dataset::append: dimension mismatch");
        inputs.conservativeResize(inputs.rows() + 1, x.size());
        inputs.row(inputs.rows() - 1) = x.transpose();
        outputs.conservativeResize(outputs.size() + 1);
        outputs[outputs.size() - 1] = y;
    }

    /// Finiteness and duplicate-row checks; min_rows is the trend size.
    void validate(int min_rows) const {
        if (inputs.rows() != outputs.size())
            throw DimensionError("Dataset: inputs/outputs row count mismatch");
        if (!inputs.allFinite() || !outputs.allFinite())
            throw DimensionError("Dataset: non-finite entries");
        if (size() < min_rows)
            throw DimensionError("Dataset: " + std::to_string(size()) +
                                 " rows but at least " + std::to_string(min_rows) +
                                 " required by the trend basis");
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (bitwise_equal(Vec(inputs.row(i)), Vec(inputs.row(j))))
                    throw DimensionError("Dataset: duplicated input rows " + std::to_string(i) +
                                         " and " + std::to_string(j));
    }
};

}  // namespace chaingp

#endif
