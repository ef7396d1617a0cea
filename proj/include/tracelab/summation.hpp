#pragma once
// Compensated (Neumaier) accumulation for the large brute-force sums.

#include <cmath>

namespace tracelab {

struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    // Merging partial sums in a fixed order keeps parallel runs bit-stable.
    void merge(const NeumaierSum& other) {
        add(other.sum);
        add(other.comp);
    }

    double value() const { return sum + comp; }
};

}  // namespace tracelab
