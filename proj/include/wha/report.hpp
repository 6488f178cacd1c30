#pragma once

#include <string>
#include <vector>

namespace wha {

// Named residuals with a shared tolerance; pass iff every residual is within
// tolerance.
struct StructureReport {
    struct Item {
        std::string name;
        double residual;
    };

    std::vector<Item> items;
    double tol = 1e-8;

    void add(std::string name, double residual) { items.push_back({std::move(name), residual}); }

    bool pass() const {
        for (const auto& it : items)
            if (!(it.residual <= tol)) return false;
        return true;
    }

    double residual_of(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return it.residual;
        return -1.0;
    }

    double max_residual() const {
        double m = 0.0;
        for (const auto& it : items) m = it.residual > m ? it.residual : m;
        return m;
    }
};

}  // namespace wha
