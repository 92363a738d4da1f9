// SPDX-License-Identifier: Apache-2.0
#include "pmod/modem.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pmod/polarization.hpp"

namespace pmod {

namespace {

std::size_t nearest_symbol(const JonesVector& y, const std::vector<JonesVector>& cands) {
    std::size_t best = 0;
    double best_d = distance2(y, cands[0]);
    for (std::size_t i = 1; i < cands.size(); ++i) {
        const double d = distance2(y, cands[i]);
        if (d < best_d) {  // strict: lowest index wins ties
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::size_t nearest_point(cdouble v, const std::vector<cdouble>& pts) {
    std::size_t best = 0;
    double best_d = std::norm(v - pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = std::norm(v - pts[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// min ||y - c_i|| over a precomputed candidate table
class TableDetector : public Detector {
  public:
    explicit TableDetector(std::vector<JonesVector> cands) : cands_(std::move(cands)) {}
    std::size_t demod(const JonesVector& y) const override { return nearest_symbol(y, cands_); }

  private:
    std::vector<JonesVector> cands_;
};

}  // namespace

// ---------------------------------------------------------------------------
// PmodModem

PmodModem::PmodModem(PmodConfig cfg) : cfg_(std::move(cfg)) {
    const int L = static_cast<int>(cfg_.packing.size());
    if (!is_power_of_two(L) || L < 2)
        throw UnsupportedOrder("pmod modem needs a power-of-two packing, got L = " +
                               std::to_string(L));
    lb_ = log2_exact(L);
    nb_ = log2_exact(cfg_.psk_order);
    if (cfg_.packing.label_bits() != lb_)
        throw LabelNotFound("packing labels are not log2(L) bits long");
    psk_ = psk_alphabet(cfg_.psk_order);

    symbols_.reserve(static_cast<std::size_t>(L) * psk_.size());
    labels_.reserve(symbols_.capacity());
    for (const auto& sp : cfg_.packing.points) {
        const JonesVector e0 = spherical_to_jones(sp.phi, sp.theta, cfg_.energy);
        std::uint32_t sphere_label = 0;
        for (char c : sp.label) sphere_label = (sphere_label << 1) | (c == '1');
        for (const auto& psk : psk_) {
            symbols_.push_back(e0 * std::polar(1.0, psk.phase));
            std::uint32_t psk_label = 0;
            for (char c : psk.label) psk_label = (psk_label << 1) | (c == '1');
            labels_.push_back((sphere_label << nb_) | psk_label);
        }
    }
}

std::string PmodModem::name() const {
    std::string n = "pmod_" + std::to_string(cfg_.packing.size()) + "x" +
                    std::to_string(cfg_.psk_order);
    if (cfg_.packing.source == PackingSource::ring_sliced) n += "_ring";
    return n;
}

JonesVector PmodModem::modulate(const std::string& bits) const {
    if (static_cast<int>(bits.size()) != lb_ + nb_)
        throw LengthMismatch("pmod_modulate: expected " + std::to_string(lb_ + nb_) + " bits");
    const std::size_t l = cfg_.packing.find_label(bits.substr(0, static_cast<std::size_t>(lb_)));
    const std::string psk_label = bits.substr(static_cast<std::size_t>(lb_));
    for (const auto& psk : psk_)
        if (psk.label == psk_label) return symbols_[index_of(static_cast<int>(l), psk.n)];
    throw LabelNotFound("pmod_modulate: no PSK symbol labeled '" + psk_label + "'");
}

DemodResult PmodModem::result_from_index(std::size_t idx) const {
    const int l = static_cast<int>(idx / psk_.size());
    const int n = static_cast<int>(idx % psk_.size());
    return {l, n, cfg_.packing.points[static_cast<std::size_t>(l)].label +
                      psk_[static_cast<std::size_t>(n)].label};
}

DemodResult PmodModem::joint_ml_demodulate(const JonesVector& y, const ChannelMatrix& h) const {
    const auto det = make_detector_joint(h);
    return result_from_index(det->demod(y));
}

std::unique_ptr<Detector> PmodModem::make_detector_joint(const ChannelMatrix& h) const {
    std::vector<JonesVector> cands(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) cands[i] = h.apply(symbols_[i]);
    return std::make_unique<TableDetector>(std::move(cands));
}

// Two-stage receiver: Stokes-domain sphere decision, then a linear filter
// recovers the PSK phase.
class PmodCascadeDetector : public Detector {
  public:
    PmodCascadeDetector(const PmodModem& modem, const ChannelMatrix& h, Receiver filter,
                        double n0)
        : psk_n_(static_cast<int>(modem.psk_.size())) {
        if (filter == Receiver::cascade_mmse && !(n0 > 0.0))
            throw ZeroIntensity("cascade MMSE needs n0 > 0");
        const auto& pts = modem.cfg_.packing.points;
        dirs_.reserve(pts.size());
        for (const auto& sp : pts) {
            const StokesVector s = spherical_to_stokes(sp.phi, sp.theta, 1.0);
            dirs_.push_back({s.s1, s.s2, s.s3});
        }
        filters_.reserve(pts.size());
        for (const auto& sp : pts) {
            const JonesVector e0 = spherical_to_jones(sp.phi, sp.theta, modem.cfg_.energy);
            const JonesVector he0 = h.apply(e0);
            JonesVector a;
            if (filter == Receiver::cascade_zf) {
                const double den = std::real(dot(he0, he0));
                if (std::abs(den) < 1e-30) throw SingularFilter("cascade ZF: H E0 ~ 0");
                a = he0 * (1.0 / den);
            } else {
                // a = (H E0 E0^H H^H + n0 I)^{-1} H E0
                const cdouble m00 = he0.ex * std::conj(he0.ex) + n0;
                const cdouble m01 = he0.ex * std::conj(he0.ey);
                const cdouble m10 = he0.ey * std::conj(he0.ex);
                const cdouble m11 = he0.ey * std::conj(he0.ey) + n0;
                const cdouble det = m00 * m11 - m01 * m10;
                if (std::abs(det) < 1e-30) throw SingularFilter("cascade MMSE: singular covariance");
                a = {(m11 * he0.ex - m01 * he0.ey) / det, (m00 * he0.ey - m10 * he0.ex) / det};
            }
            filters_.push_back(a);
        }
    }

    std::size_t demod(const JonesVector& y) const override {
        const StokesVector s = jones_to_stokes(y);
        std::size_t l_hat = 0;
        double best = -1e300;
        for (std::size_t l = 0; l < dirs_.size(); ++l) {
            const double corr = s.s1 * dirs_[l][0] + s.s2 * dirs_[l][1] + s.s3 * dirs_[l][2];
            if (corr > best) {
                best = corr;
                l_hat = l;
            }
        }
        const double xi = std::arg(dot(filters_[l_hat], y));
        // nearest PSK phase, wrap-aware, boundary ties to the lower index
        int n_hat = 0;
        double best_d = 1e300;
        for (int n = 0; n < psk_n_; ++n) {
            const double d = std::abs(std::remainder(xi - 2.0 * M_PI * n / psk_n_, 2.0 * M_PI));
            if (d < best_d) {
                best_d = d;
                n_hat = n;
            }
        }
        return static_cast<std::size_t>(n_hat) +
               l_hat * static_cast<std::size_t>(psk_n_);
    }

  private:
    int psk_n_;
    std::vector<std::array<double, 3>> dirs_;
    std::vector<JonesVector> filters_;
};

DemodResult PmodModem::cascade_demodulate(const JonesVector& y, const ChannelMatrix& h,
                                          Receiver filter, double n0) const {
    PmodCascadeDetector det(*this, h, filter, n0);
    return result_from_index(det.demod(y));
}

std::unique_ptr<Detector> PmodModem::make_detector(const ChannelMatrix& h, double n0) const {
    switch (cfg_.receiver) {
        case Receiver::joint:
            return make_detector_joint(h);
        case Receiver::cascade_zf:
        case Receiver::cascade_mmse:
            return std::make_unique<PmodCascadeDetector>(*this, h, cfg_.receiver, n0);
    }
    return make_detector_joint(h);
}

// ---------------------------------------------------------------------------
// BaselineModem

namespace {

std::uint32_t label_bits_of(const std::string& s) {
    std::uint32_t v = 0;
    for (char c : s) v = (v << 1) | (c == '1');
    return v;
}

std::vector<cdouble> stream_points(BaselineKind kind, int M, double energy,
                                   std::vector<std::uint32_t>* labels) {
    std::vector<cdouble> pts;
    if (kind == BaselineKind::dual_qam || kind == BaselineKind::single_qam) {
        for (const auto& q : qam_alphabet(M, energy)) {
            pts.push_back(q.point);
            if (labels) labels->push_back(label_bits_of(q.label));
        }
    } else {
        for (const auto& p : psk_alphabet(M)) {
            pts.push_back(std::polar(std::sqrt(energy), p.phase));
            if (labels) labels->push_back(label_bits_of(p.label));
        }
    }
    return pts;
}

}  // namespace

BaselineModem::BaselineModem(BaselineKind kind, int L, int N, double energy)
    : kind_(kind), L_(L), N_(N), energy_(energy) {
    const int lb = log2_exact(L), nb = log2_exact(N);
    bits_ = lb + nb;
    const bool dual = kind == BaselineKind::dual_qam || kind == BaselineKind::dual_psk;
    if (dual) {
        std::vector<std::uint32_t> la, lb_labels;
        stream_h_ = stream_points(kind, L, energy / 2.0, &la);
        stream_v_ = stream_points(kind, N, energy / 2.0, &lb_labels);
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < N; ++j) {
                symbols_.push_back({stream_h_[static_cast<std::size_t>(i)],
                                    stream_v_[static_cast<std::size_t>(j)]});
                labels_.push_back((la[static_cast<std::size_t>(i)] << nb) |
                                  lb_labels[static_cast<std::size_t>(j)]);
            }
    } else {
        std::vector<std::uint32_t> ls;
        single_ = stream_points(kind, L * N, energy, &ls);
        for (std::size_t i = 0; i < single_.size(); ++i) {
            // single-polarization chain occupies the V branch (the
            // PDL-exposed polarization)
            symbols_.push_back({0.0, single_[i]});
            labels_.push_back(ls[i]);
        }
    }
}

std::string BaselineModem::name() const {
    switch (kind_) {
        case BaselineKind::dual_qam: return "dual_qam_" + std::to_string(L_) + "x" + std::to_string(N_);
        case BaselineKind::dual_psk: return "dual_psk_" + std::to_string(L_) + "x" + std::to_string(N_);
        case BaselineKind::single_qam: return "single_qam_" + std::to_string(L_ * N_);
        case BaselineKind::single_psk: return "single_psk_" + std::to_string(L_ * N_);
    }
    return "baseline";
}

namespace {

// ZF-equalized per-stream decisions; exact per-branch ML when H is diagonal.
class DualZfDetector : public Detector {
  public:
    DualZfDetector(const ChannelMatrix& h, const std::vector<cdouble>& a,
                   const std::vector<cdouble>& b)
        : a_(a), b_(b) {
        const cdouble det = h.det();
        if (std::abs(det) < 1e-30) throw SingularFilter("dual ZF: singular channel");
        w00_ = h.h11 / det;
        w01_ = -h.h01 / det;
        w10_ = -h.h10 / det;
        w11_ = h.h00 / det;
    }

    std::size_t demod(const JonesVector& y) const override {
        const cdouble xh = w00_ * y.ex + w01_ * y.ey;
        const cdouble xv = w10_ * y.ex + w11_ * y.ey;
        const std::size_t i = nearest_point(xh, a_);
        const std::size_t j = nearest_point(xv, b_);
        return i * b_.size() + j;
    }

  private:
    const std::vector<cdouble>& a_;
    const std::vector<cdouble>& b_;
    cdouble w00_, w01_, w10_, w11_;
};

// Matched filter on the occupied column; exact ML for a single stream.
class SingleDetector : public Detector {
  public:
    SingleDetector(const ChannelMatrix& h, const std::vector<cdouble>& pts) : pts_(pts) {
        col_ = h.column(1);
        const double g = col_.norm2();
        if (g < 1e-30) throw SingularFilter("single-pol branch has zero gain");
        gain_ = 1.0 / g;
    }

    std::size_t demod(const JonesVector& y) const override {
        const cdouble s = dot(col_, y) * gain_;
        return nearest_point(s, pts_);
    }

  private:
    const std::vector<cdouble>& pts_;
    JonesVector col_;
    double gain_{};
};

}  // namespace

std::unique_ptr<Detector> BaselineModem::make_detector(const ChannelMatrix& h, double) const {
    if (kind_ == BaselineKind::dual_qam || kind_ == BaselineKind::dual_psk)
        return std::make_unique<DualZfDetector>(h, stream_h_, stream_v_);
    return std::make_unique<SingleDetector>(h, single_);
}

std::unique_ptr<Modem> make_baseline(BaselineKind kind, int L, int N, double energy) {
    return std::make_unique<BaselineModem>(kind, L, N, energy);
}

}  // namespace pmod
