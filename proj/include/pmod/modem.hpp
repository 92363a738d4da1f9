// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pmod/alphabets.hpp"
#include "pmod/channel.hpp"
#include "pmod/packing.hpp"
#include "pmod/types.hpp"

namespace pmod {

enum class Receiver { joint, cascade_zf, cascade_mmse };

struct DemodResult {
    int l_hat{};
    int n_hat{};
    std::string bits;  // label(l_hat) + label(n_hat)
};

// Symbol decision bound to one channel realization. Implementations
// precompute whatever the channel allows; demod() is pure and thread-safe.
class Detector {
  public:
    virtual ~Detector() = default;
    virtual std::size_t demod(const JonesVector& y) const = 0;
};

// Common surface for the transmit alphabets exercised by the Monte Carlo
// engine: an indexed set of 2-vector symbols with integer bit labels.
class Modem {
  public:
    virtual ~Modem() = default;

    virtual std::string name() const = 0;
    virtual int bits_per_symbol() const = 0;
    virtual double symbol_energy() const = 0;
    std::size_t symbol_count() const { return symbols_.size(); }
    const JonesVector& symbol(std::size_t i) const { return symbols_[i]; }
    std::uint32_t label(std::size_t i) const { return labels_[i]; }

    // Factory for the detector this modem uses under channel h with noise
    // power n0 per complex dimension.
    virtual std::unique_ptr<Detector> make_detector(const ChannelMatrix& h, double n0) const = 0;

  protected:
    std::vector<JonesVector> symbols_;
    std::vector<std::uint32_t> labels_;
};

struct PmodConfig {
    Packing packing;
    int psk_order = 2;
    double energy = 1.0;  // 0 dBW
    Receiver receiver = Receiver::joint;
};

// 3D polarized modulation: log2(L) bits pick the sphere point, log2(N) bits
// the PSK initial phase. Every symbol has ||x||^2 == energy.
class PmodModem : public Modem {
  public:
    explicit PmodModem(PmodConfig cfg);

    std::string name() const override;
    int bits_per_symbol() const override { return lb_ + nb_; }
    double symbol_energy() const override { return cfg_.energy; }
    int sphere_bits() const { return lb_; }
    int psk_bits() const { return nb_; }
    const PmodConfig& config() const { return cfg_; }

    // First lb bits select the sphere point by packing label, last nb bits
    // the PSK symbol by Gray label. Throws LabelNotFound for a label missing
    // from the packing.
    JonesVector modulate(const std::string& bits) const;

    std::size_t index_of(int l, int n) const { return static_cast<std::size_t>(l) * psk_.size() + n; }

    DemodResult joint_ml_demodulate(const JonesVector& y, const ChannelMatrix& h) const;
    DemodResult cascade_demodulate(const JonesVector& y, const ChannelMatrix& h,
                                   Receiver filter, double n0) const;

    std::unique_ptr<Detector> make_detector(const ChannelMatrix& h, double n0) const override;
    std::unique_ptr<Detector> make_detector_joint(const ChannelMatrix& h) const;

  private:
    PmodConfig cfg_;
    std::vector<PskSymbol> psk_;
    int lb_{};
    int nb_{};
    DemodResult result_from_index(std::size_t idx) const;
    friend class PmodCascadeDetector;
};

enum class BaselineKind { dual_qam, dual_psk, single_qam, single_psk };

// Conventional schemes at the same spectral efficiency.
// Dual kinds put an L-ary symbol (energy E/2) on H and an N-ary symbol
// (energy E/2) on V, detected per stream after a ZF equalizer. Single kinds
// put an (L*N)-ary symbol (energy E) on the V branch, detected by a matched
// filter on that column; with an identity channel both reduce to exact ML.
class BaselineModem : public Modem {
  public:
    BaselineModem(BaselineKind kind, int L, int N, double energy = 1.0);

    std::string name() const override;
    int bits_per_symbol() const override { return bits_; }
    double symbol_energy() const override { return energy_; }
    BaselineKind kind() const { return kind_; }

    std::unique_ptr<Detector> make_detector(const ChannelMatrix& h, double n0) const override;

  private:
    BaselineKind kind_;
    int L_{}, N_{}, bits_{};
    double energy_{};
    std::vector<cdouble> stream_h_, stream_v_;  // dual: per-branch points
    std::vector<cdouble> single_;               // single: 1-D points
};

std::unique_ptr<Modem> make_baseline(BaselineKind kind, int L, int N, double energy = 1.0);

}  // namespace pmod
