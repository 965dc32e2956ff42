#pragma once

// Registry of symbolic irrational generators.
//
// Every generator is declared rationally independent of 1 and of all other
// generators. Each carries a 256-bit fixed-point value in [0, 1) used for all
// numerical shadows; the symbolic layer never looks at it.

#include "rational.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace ergolab {

using GeneratorId = std::uint32_t;

struct Generator {
    GeneratorId id = 0;
    std::string name;
    Integer value256;  // floor(value * 2^256), in [0, 2^256)
    Phase256 phase;  // same value as a circle phase
    double shadow = 0.0;
};

class GeneratorRegistry {
  public:
    GeneratorRegistry() = default;
    GeneratorRegistry(const GeneratorRegistry&) = delete;
    GeneratorRegistry& operator=(const GeneratorRegistry&) = delete;

    static GeneratorRegistry& global() {
        static GeneratorRegistry registry;
        return registry;
    }

    /// Registers `name` with the given 256-bit fraction. Names are unique:
    /// re-registering an existing name returns the existing id if the value
    /// matches and throws otherwise.
    GeneratorId mint(const std::string& name, const Integer& value256) {
        if (name.empty()) throw PreconditionError("generator name must be nonempty");
        if (value256 < 0 || value256 >= pow2(256))
            throw DomainError("generator '" + name + "' value must lie in [0,1)");
        if (value256 == 0) throw DomainError("generator '" + name + "' must be irrational (got 0)");
        std::unique_lock lock(mutex_);
        if (auto it = by_name_.find(name); it != by_name_.end()) {
            if (entries_[it->second].value256 != value256)
                throw PreconditionError("generator '" + name + "' already registered with a different value");
            return it->second;
        }
        Generator g;
        g.id = static_cast<GeneratorId>(entries_.size());
        g.name = name;
        g.value256 = value256;
        g.phase = phase_from_integer(value256);
        g.shadow = g.phase.to_double();
        entries_.push_back(std::move(g));
        by_name_.emplace(name, entries_.back().id);
        return entries_.back().id;
    }

    /// frac(sqrt(p)) under the name "sqrt<p>"; p must not be a perfect square.
    GeneratorId mint_sqrt(unsigned long p) {
        Integer scaled = Integer(p) * pow2(512);
        Integer root;
        mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
        if (root * root == scaled) throw DomainError("sqrt(" + std::to_string(p) + ") is rational");
        Integer value;
        mpz_fdiv_r_2exp(value.get_mpz_t(), root.get_mpz_t(), 256);
        return mint("sqrt" + std::to_string(p), value);
    }

    /// Registers an exact binary value given as a double in (0, 1).
    GeneratorId mint_double(const std::string& name, double value) {
        if (!(value > 0.0 && value < 1.0) || !std::isfinite(value))
            throw DomainError("generator '" + name + "' value must lie in (0,1)");
        int exponent = 0;
        double mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent
        auto bits = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
        Integer v = Integer(static_cast<long>(bits));
        long shift = 256 - 53 + exponent;
        if (shift < 0) throw DomainError("generator '" + name + "' value is too small");
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(shift));
        return mint(name, v);
    }

    /// frac(sqrt(p)) for the smallest prime p whose generator is not yet registered.
    GeneratorId mint_next_default() {
        for (unsigned long p = 2;; ++p) {
            if (!is_prime(p)) continue;
            if (!find("sqrt" + std::to_string(p))) return mint_sqrt(p);
        }
    }

    /// A fresh generator whose value is four raw 64-bit draws.
    GeneratorId mint_random(std::mt19937_64& rng) {
        Integer v = 0;
        for (int i = 0; i < 4; ++i) {
            v <<= 64;
            std::uint64_t w = rng();
            v += Integer(static_cast<unsigned long>(w));
        }
        if (v == 0) v = 1;
        std::string name;
        {
            std::shared_lock lock(mutex_);
            name = "rnd" + std::to_string(entries_.size());
        }
        while (find(name)) name += "_";
        return mint(name, v);
    }

    const Generator& get(GeneratorId id) const {
        std::shared_lock lock(mutex_);
        if (id >= entries_.size()) throw PreconditionError("unknown generator id " + std::to_string(id));
        return entries_[id];  // deque elements never move
    }

    std::optional<GeneratorId> find(const std::string& name) const {
        std::shared_lock lock(mutex_);
        if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
        return std::nullopt;
    }

    /// Looks `name` up, auto-registering "sqrt<p>" names.
    GeneratorId resolve(const std::string& name) {
        if (auto id = find(name)) return *id;
        if (name.size() > 4 && name.compare(0, 4, "sqrt") == 0 &&
            name.find_first_not_of("0123456789", 4) == std::string::npos)
            return mint_sqrt(std::stoul(name.substr(4)));
        throw ParseError("unknown generator '" + name + "'");
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

  private:
    static bool is_prime(unsigned long p) {
        if (p < 2) return false;
        for (unsigned long q = 2; q * q <= p; ++q)
            if (p % q == 0) return false;
        return true;
    }

    mutable std::shared_mutex mutex_;
    std::deque<Generator> entries_;
    std::unordered_map<std::string, GeneratorId> by_name_;
};

}  // namespace ergolab
