#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "locator/game.hpp"

namespace locator {

/// Probes the same vertex every round.
class AlwaysProbe : public CopStrategy {
public:
    explicit AlwaysProbe(Vertex v) : v_(v) {}
    std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<AlwaysProbe>(*this); }
    Vertex next_probe(const VertexSet&) override { return v_; }
    void observe(Vertex, int, const VertexSet&) override {}
    void serialize(std::string& out) const override;
    std::string name() const override { return "always"; }

private:
    Vertex v_;
};

/// Cycles through a fixed probe list.
class RoundRobinProbe : public CopStrategy {
public:
    explicit RoundRobinProbe(std::vector<Vertex> order);
    std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<RoundRobinProbe>(*this); }
    Vertex next_probe(const VertexSet&) override;
    void observe(Vertex, int, const VertexSet&) override {}
    void serialize(std::string& out) const override;
    std::string name() const override { return "round-robin"; }

private:
    std::vector<Vertex> order_;
    std::size_t cursor_ = 0;
};

/// Probe chosen by a counter-keyed hash: deterministic yet irregular. Used to
/// drive randomized engine tests with a reproducible cop.
class HashedProbe : public CopStrategy {
public:
    HashedProbe(std::size_t vertex_count, std::uint64_t seed) : n_(vertex_count), seed_(seed) {}
    std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<HashedProbe>(*this); }
    Vertex next_probe(const VertexSet&) override;
    void observe(Vertex, int, const VertexSet&) override {}
    void serialize(std::string& out) const override;
    std::string name() const override { return "hashed"; }

private:
    std::size_t n_;
    std::uint64_t seed_;
    std::uint64_t round_ = 0;
};

}  // namespace locator
