#include "panel_internal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace singspec {
namespace detail {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884L;

double clamp01(double v) { return std::min(1.0, std::max(-1.0, v)); }

// theta = arccos x along the panel's frame, computed through the exact
// distance coordinate near the endpoints so it stays accurate to denormal t.
double theta_from_t(const Panel& p, double t) {
    if (p.hint.active && p.hint.site == Site::RightEndpoint)
        return 2.0 * std::asin(std::sqrt(0.5 * t));
    if (p.hint.active && p.hint.site == Site::LeftEndpoint)
        return kPi - 2.0 * std::asin(std::sqrt(0.5 * t));
    return std::acos(clamp01(p.anchor + p.dirsign * t));
}

double t_from_theta(const Panel& p, double theta) {
    if (p.hint.active && p.hint.site == Site::RightEndpoint) {
        double sn = std::sin(0.5 * theta);
        return 2.0 * sn * sn;
    }
    if (p.hint.active && p.hint.site == Site::LeftEndpoint) {
        double cs = std::cos(0.5 * theta);
        return 2.0 * cs * cs;
    }
    return p.dirsign * (std::cos(theta) - p.anchor);
}

void finalize(Panel& p) { p.xmid = p.anchor + p.dirsign * 0.5 * (p.t0 + p.t1); }

}  // namespace

const QuadratureRule& cached_gauss_legendre(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

double panel_value(const PanelIntegrand& g, const Panel& p, const QuadratureRule& gl) {
    double half = 0.5 * (p.t1 - p.t0);
    if (!(half > 0.0)) return 0.0;
    double mid = 0.5 * (p.t0 + p.t1);
    double s = 0.0;
    for (int q = 0; q < gl.size(); ++q) {
        double t = mid + half * gl.nodes[q];
        if (p.hint.active && !(t > 0.0)) continue;  // guard against underflow to 0
        double x = p.anchor + p.dirsign * t;
        SingularFunction::Hint h = p.hint;
        h.t = t;
        s += (half * gl.weights[q]) * g(x, h);
    }
    return s;
}

void append_panel_split(std::vector<Panel>& out, const Panel& proto, double osc, double cap_len) {
    double len = proto.t1 - proto.t0;
    if (!(len > 0.0)) return;
    int k = 1;
    if (cap_len > 0.0) {
        k = static_cast<int>(std::ceil(len / cap_len));
    } else if (osc > 0.0) {
        double dth = std::fabs(theta_from_t(proto, proto.t1) - theta_from_t(proto, proto.t0));
        k = static_cast<int>(std::ceil(osc * dth / kPhaseBudget));
    }
    k = std::max(1, std::min(k, 1 << 20));
    if (k == 1) {
        Panel p = proto;
        finalize(p);
        out.push_back(p);
        return;
    }
    double th0 = (cap_len > 0.0) ? 0.0 : theta_from_t(proto, proto.t0);
    double th1 = (cap_len > 0.0) ? 0.0 : theta_from_t(proto, proto.t1);
    double prev = proto.t0;
    for (int i = 1; i <= k; ++i) {
        double t;
        if (i == k) {
            t = proto.t1;
        } else if (cap_len > 0.0) {
            t = proto.t0 + len * i / k;
        } else {
            t = t_from_theta(proto, th0 + (th1 - th0) * i / k);
        }
        t = std::min(std::max(t, prev), proto.t1);
        if (t > prev) {
            Panel p = proto;
            p.t0 = prev;
            p.t1 = t;
            finalize(p);
            out.push_back(p);
        }
        prev = t;
    }
}

void emit_run_panels(std::vector<Panel>& out, const GradedRun& run, double osc, double cap_len) {
    int jh = std::min(run.half_depth, kMaxDepth / 2);
    int jf = std::min(2 * jh, kMaxDepth);
    Panel proto;
    proto.anchor = run.anchor;
    proto.dirsign = run.dirsign;
    proto.hint = run.hint;
    for (int j = 0; j < jf; ++j) {
        proto.t0 = run.T * std::pow(kGradeRatio, j + 1);
        proto.t1 = run.T * std::pow(kGradeRatio, j);
        proto.cls = (j < jh) ? PanelClass::Outer : PanelClass::DeepOnly;
        append_panel_split(out, proto, osc, cap_len);
    }
    proto.t0 = 0.0;
    proto.t1 = run.T * std::pow(kGradeRatio, jf);
    proto.cls = PanelClass::SliverFull;
    append_panel_split(out, proto, osc, cap_len);
    proto.t0 = 0.0;
    proto.t1 = run.T * std::pow(kGradeRatio, jh);
    proto.cls = PanelClass::SliverHalf;
    append_panel_split(out, proto, osc, cap_len);
}

int probe_half_depth(const PanelIntegrand& g, const GradedRun& run, double thr, double osc,
                     double cap_len, const QuadratureRule& gl) {
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= kMaxDepth / 2; ++j) {
        Panel proto;
        proto.anchor = run.anchor;
        proto.dirsign = run.dirsign;
        proto.hint = run.hint;
        proto.t0 = run.T * std::pow(kGradeRatio, j + 1);
        proto.t1 = run.T * std::pow(kGradeRatio, j);
        std::vector<Panel> split;
        append_panel_split(split, proto, osc, cap_len);
        double c = 0.0;
        for (const auto& p : split) c += panel_value(g, p, gl);
        double ac = std::fabs(c);
        if (j >= kMinHalfDepth && ac <= thr && prev <= thr) return j;
        prev = ac;
    }
    return kMaxDepth / 2;
}

MeshSums evaluate_run_mesh(const PanelIntegrand& g, const std::vector<GradedRun>& runs, double osc,
                           double cap_len, const QuadratureRule& gl) {
    std::vector<Panel> panels;
    for (const auto& r : runs) emit_run_panels(panels, r, osc, cap_len);
    std::vector<double> values(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) values[i] = panel_value(g, panels[i], gl);
    std::vector<int> order = sorted_panel_order(panels);
    Kahan kf, kh;
    for (int idx : order) {
        PanelClass c = panels[idx].cls;
        if (in_full_mesh(c)) kf.add(values[idx]);
        if (in_half_mesh(c)) kh.add(values[idx]);
    }
    return {kf.sum, kh.sum};
}

bool escalate_runs(std::vector<GradedRun>& runs) {
    bool grew = false;
    for (auto& r : runs) {
        int next = std::min(2 * r.half_depth, kMaxDepth / 2);
        if (next > r.half_depth) {
            r.half_depth = next;
            grew = true;
        }
    }
    return grew;
}

std::vector<int> sorted_panel_order(const std::vector<Panel>& panels) {
    std::vector<int> order(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int ia, int ib) {
        const Panel& a = panels[ia];
        const Panel& b = panels[ib];
        if (a.xmid != b.xmid) return a.xmid < b.xmid;
        if (a.cls != b.cls) return static_cast<int>(a.cls) < static_cast<int>(b.cls);
        return ia < ib;
    });
    return order;
}

}  // namespace detail
}  // namespace singspec
