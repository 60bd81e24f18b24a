#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "derivlab/report.hpp"

namespace derivlab {

struct BatchResult {
    long tested = 0;
    std::optional<size_t> first_fail;
    std::optional<size_t> first_error;
    std::string error_message;

    bool ok() const { return !first_fail && !first_error; }
};

// Evaluate kernel(0..n-1). Every index is evaluated regardless of failures,
// and the smallest failing or erroring index wins, so the result does not
// depend on execution order. run_batch uses OpenMP when available unless the
// serial reference path is forced; run_batch_serial is the reference
// implementation with identical semantics.
BatchResult run_batch(size_t n, const std::function<bool(size_t)>& kernel);
BatchResult run_batch_serial(size_t n, const std::function<bool(size_t)>& kernel);

void set_serial_batches(bool serial);
bool serial_batches();

// Shared verifier skeleton: run the kernel over n indices, then fill in
// status, sample count, and the witness for the first failing index.
VerdictReport run_identity_check(std::string check, std::string anchor, size_t n,
                                 const std::function<bool(size_t)>& kernel,
                                 const std::function<Witness(size_t)>& witness);

} // namespace derivlab
