#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace derivlab {

enum class Status { PASS, FAIL, ERROR };

const char* status_name(Status s);

// First failing sample, with both sides in canonical form.
struct Witness {
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string lhs;
    std::string rhs;
};

struct SubVerdict {
    std::string name;
    Status status = Status::PASS;
    std::optional<Witness> witness;
    std::string note;
};

struct VerdictReport {
    std::string check;
    std::string anchor;
    long samples_tested = 0;
    Status status = Status::PASS;
    std::optional<Witness> witness;
    std::vector<std::string> assumptions;
    std::vector<SubVerdict> sub_verdicts;
    std::vector<std::string> notes;
    std::string error;

    bool passed() const { return status == Status::PASS; }
};

} // namespace derivlab
