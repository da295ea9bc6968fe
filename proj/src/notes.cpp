#include "multicover/notes.hpp"

#include <iostream>
#include <mutex>

namespace multicover::notes {

namespace {
std::mutex mu;
std::vector<std::pair<std::string, std::string>> log;
bool echo = false;
}  // namespace

void emit(const std::string& category, const std::string& message) {
    std::lock_guard<std::mutex> lock(mu);
    log.emplace_back(category, message);
    if (echo) std::cerr << "[note] " << category << ": " << message << "\n";
}

std::size_t count(const std::string& category) {
    std::lock_guard<std::mutex> lock(mu);
    std::size_t n = 0;
    for (const auto& entry : log)
        if (entry.first == category) ++n;
    return n;
}

std::vector<std::pair<std::string, std::string>> snapshot() {
    std::lock_guard<std::mutex> lock(mu);
    return log;
}

void clear() {
    std::lock_guard<std::mutex> lock(mu);
    log.clear();
}

void set_echo(bool on) {
    std::lock_guard<std::mutex> lock(mu);
    echo = on;
}

}  // namespace multicover::notes
