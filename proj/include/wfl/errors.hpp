#pragma once

#include <stdexcept>
#include <string>

namespace wfl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnboundedBody : Error {
    explicit UnboundedBody(const std::string& msg) : Error("unbounded body: " + msg) {}
};

struct OriginNotInterior : Error {
    explicit OriginNotInterior(const std::string& msg) : Error("origin not interior: " + msg) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error("convergence failure: " + msg) {}
};

struct EmptySection : Error {
    explicit EmptySection(const std::string& msg) : Error("empty section: " + msg) {}
};

struct UnsupportedSection : Error {
    explicit UnsupportedSection(const std::string& msg) : Error("unsupported section: " + msg) {}
};

struct IllConditionedFit : Error {
    explicit IllConditionedFit(const std::string& msg) : Error("ill-conditioned fit: " + msg) {}
};

struct DivergentMoment : Error {
    explicit DivergentMoment(const std::string& msg) : Error("divergent moment: " + msg) {}
};

struct TruncationDominates : Error {
    explicit TruncationDominates(const std::string& msg) : Error("truncation dominates: " + msg) {}
};

struct UnboundedSupport : Error {
    explicit UnboundedSupport(const std::string& msg) : Error("unbounded support: " + msg) {}
};

struct UnknownCheck : Error {
    explicit UnknownCheck(const std::string& msg) : Error("unknown check: " + msg) {}
};

struct MissingInput : Error {
    explicit MissingInput(const std::string& msg) : Error("missing input: " + msg) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg) : Error("singular system: " + msg) {}
};

struct InvalidBody : Error {
    explicit InvalidBody(const std::string& msg) : Error("invalid body: " + msg) {}
};

}  // namespace wfl
