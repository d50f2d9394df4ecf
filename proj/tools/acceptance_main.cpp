#include "acceptance.hpp"

#include <iostream>

int main() {
    circa::acceptance::Options opt;
    opt.on_result = [](const circa::acceptance::CriterionResult& r) { std::cout << circa::acceptance::format(r) << std::endl; };
    auto results = circa::acceptance::run(opt);
    int passed = 0;
    for (const auto& r : results) passed += r.pass;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
