#include "locator/simple_strategies.hpp"

#include <stdexcept>

namespace locator {

namespace {

template <class T>
void put(std::string& out, T value) {
    out.append(reinterpret_cast<const char*>(&value), sizeof(value));
}

}  // namespace

void AlwaysProbe::serialize(std::string& out) const { put(out, v_); }

RoundRobinProbe::RoundRobinProbe(std::vector<Vertex> order) : order_(std::move(order)) {
    if (order_.empty()) throw std::invalid_argument("round-robin order is empty");
}

Vertex RoundRobinProbe::next_probe(const VertexSet&) {
    const Vertex v = order_[cursor_];
    cursor_ = (cursor_ + 1) % order_.size();
    return v;
}

void RoundRobinProbe::serialize(std::string& out) const { put(out, static_cast<std::uint32_t>(cursor_)); }

Vertex HashedProbe::next_probe(const VertexSet&) {
    std::uint64_t h = seed_ + 0x9e3779b97f4a7c15ULL * ++round_;
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return static_cast<Vertex>(h % n_);
}

void HashedProbe::serialize(std::string& out) const { put(out, round_); }

}  // namespace locator
