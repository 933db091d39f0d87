#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vertisite {

// Input/schema problems. Carries every violation found, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    explicit ValidationError(const std::string& issue)
        : ValidationError(std::vector<std::string>{issue}) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "\n";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

// Failures past validation: IO, providers, internal contract breaches.
class PipelineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vertisite
