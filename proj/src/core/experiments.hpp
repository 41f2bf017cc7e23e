#pragma once

#include <cstdint>

#include "core/heavy_tail.hpp"
#include "core/matrix_models.hpp"
#include "core/pwit.hpp"
#include "core/spectra.hpp"

namespace levyspec {

// Replication-level samplers shared by the C API, the CLI and the
// acceptance suite. Every draw uses the (seed, rep, role) stream contract, so
// a replication is reproducible on its own.

// Scaled symmetric matrix for one replication. kIidAn draws the signed
// matrix X; the Markov modes draw weights and return the scaled S.
Matrix sample_model_matrix(const TailLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                           std::uint64_t rep);
// Finite-variance weights; law-free Markov modes only.
Matrix sample_model_matrix(const UniformLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                           std::uint64_t rep);

SpectralSample sample_spectrum(const TailLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                               std::uint64_t rep, const EigenOptions& options = {});
SpectralSample sample_spectrum(const UniformLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                               std::uint64_t rep, const EigenOptions& options = {});

// Row sums of the weight matrix drawn by sample_model_matrix for the same
// (seed, rep), without forming K or S.
Vector sample_row_sums(const TailLaw& law, std::int64_t n, std::uint64_t seed, std::uint64_t rep);

PwitTruncation sample_tree(const PwitShape& shape, std::uint64_t seed, std::uint64_t rep,
                           const Materialization& m = {});

}  // namespace levyspec
