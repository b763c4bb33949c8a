#include "tensorcalc/report.hpp"

namespace tcalc {

bool Report::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

Check& Report::add(std::string name, bool ok, std::size_t cases, double residual, std::string detail) {
    checks.push_back({std::move(name), ok, cases, residual, std::move(detail)});
    return checks.back();
}

Check& Report::add(std::string name, const Verdict& v, std::size_t cases, std::string detail) {
    return add(std::move(name), v.equal, cases, v.max_residual, std::move(detail));
}

void Report::append(const Report& r) {
    for (auto c : r.checks) {
        if (!r.title.empty()) c.name = r.title + "/" + c.name;
        checks.push_back(std::move(c));
    }
    notes.insert(notes.end(), r.notes.begin(), r.notes.end());
}

const Check* Report::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace tcalc
