#pragma once
#include <string>
#include <vector>

namespace acat {

struct Finding {
    std::string rule;    // short machine-ish tag, e.g. "d-squared", "axiom-3"
    std::string where;   // generator / subset / tuple the violation sits at
    std::string detail;  // human readable expansion
};

struct Report {
    std::vector<Finding> findings;

    bool ok() const { return findings.empty(); }
    void add(std::string rule, std::string where, std::string detail) {
        findings.push_back({std::move(rule), std::move(where), std::move(detail)});
    }
    void merge(const Report& o) {
        findings.insert(findings.end(), o.findings.begin(), o.findings.end());
    }
    std::string str() const {
        std::string s;
        for (const auto& f : findings) s += "[" + f.rule + "] " + f.where + ": " + f.detail + "\n";
        return s;
    }
};

}  // namespace acat
