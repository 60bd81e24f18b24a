#include "derivlab/batch.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <vector>

namespace derivlab {

namespace {

std::atomic<bool> g_serial{false};

BatchResult scan_outcomes(size_t n, const std::vector<uint8_t>& outcome,
                          const std::vector<std::string>& errs) {
    BatchResult res;
    res.tested = static_cast<long>(n);
    for (size_t i = 0; i < n; ++i) {
        if (outcome[i] == 1) {
            res.first_fail = i;
            break;
        }
        if (outcome[i] == 2) {
            res.first_error = i;
            res.error_message = errs[i];
            break;
        }
    }
    return res;
}

} // namespace

void set_serial_batches(bool serial) { g_serial = serial; }

bool serial_batches() { return g_serial; }

BatchResult run_batch_serial(size_t n, const std::function<bool(size_t)>& kernel) {
    std::vector<uint8_t> outcome(n, 0);
    std::vector<std::string> errs(n);
    for (size_t i = 0; i < n; ++i) {
        try {
            outcome[i] = kernel(i) ? 0 : 1;
        } catch (const std::exception& e) {
            outcome[i] = 2;
            errs[i] = e.what();
        } catch (...) {
            outcome[i] = 2;
            errs[i] = "unknown error";
        }
    }
    return scan_outcomes(n, outcome, errs);
}

VerdictReport run_identity_check(std::string check, std::string anchor, size_t n,
                                 const std::function<bool(size_t)>& kernel,
                                 const std::function<Witness(size_t)>& witness) {
    VerdictReport rep;
    rep.check = std::move(check);
    rep.anchor = std::move(anchor);
    const BatchResult res = run_batch(n, kernel);
    rep.samples_tested = res.tested;
    if (res.first_error) {
        rep.status = Status::ERROR;
        rep.error = res.error_message;
    } else if (res.first_fail) {
        rep.status = Status::FAIL;
        rep.witness = witness(*res.first_fail);
    } else {
        rep.status = Status::PASS;
    }
    return rep;
}

BatchResult run_batch(size_t n, const std::function<bool(size_t)>& kernel) {
#ifdef DERIVLAB_HAVE_OPENMP
    if (g_serial || n < 4)
        return run_batch_serial(n, kernel);
    std::vector<uint8_t> outcome(n, 0);
    std::vector<std::string> errs(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        const size_t idx = static_cast<size_t>(i);
        try {
            outcome[idx] = kernel(idx) ? 0 : 1;
        } catch (const std::exception& e) {
            outcome[idx] = 2;
            errs[idx] = e.what();
        } catch (...) {
            outcome[idx] = 2;
            errs[idx] = "unknown error";
        }
    }
    return scan_outcomes(n, outcome, errs);
#else
    return run_batch_serial(n, kernel);
#endif
}

} // namespace derivlab
