#pragma once

// Shared singularity-graded panel machinery for the adaptive integrators.
//
// A Panel lives in a "native" coordinate t with x = anchor + dirsign * t; for
// panels graded toward a singular site, t is the exact distance to the site,
// which the integrand receives through SingularFunction::Hint so that
// algebraic-logarithmic factors never lose digits to cancellation.  A full
// mesh and a half-depth mesh share their outer panels; comparing the two sums
// gives the error estimate attributed to grading depth.

#include <functional>
#include <vector>

#include "singspec/function.hpp"
#include "singspec/quad.hpp"

namespace singspec {
namespace detail {

inline constexpr double kGradeRatio = 0.15;  // geometric panel ratio
inline constexpr int kMinHalfDepth = 4;
inline constexpr int kMaxDepth = 350;         // cap on the fine-mesh depth
inline constexpr double kPhaseBudget = 35.0;  // max phase (radians) per panel

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

enum class PanelClass {
    Outer,       // present in both the full and the half-depth mesh
    DeepOnly,    // geometric panels beyond the half depth (full mesh only)
    SliverFull,  // closing sliver [0, T r^J] of the full mesh
    SliverHalf   // closing sliver [0, T r^(J/2)] of the half-depth mesh
};

struct Panel {
    double t0 = 0.0, t1 = 0.0;  // native interval, t0 < t1
    double anchor = 0.0;        // x = anchor + dirsign * t
    double dirsign = 1.0;
    SingularFunction::Hint hint;  // active for graded panels; t filled per node
    PanelClass cls = PanelClass::Outer;
    double xmid = 0.0;
};

// One geometric grading run toward a singular site sitting at one edge of an
// x-interval of length T.
struct GradedRun {
    double anchor = 0.0;
    double dirsign = 1.0;
    double T = 0.0;
    SingularFunction::Hint hint;
    int half_depth = kMinHalfDepth;
};

const QuadratureRule& cached_gauss_legendre(int n);

// Integrand in x; the hint identifies the graded site (if any) and carries the
// exact distance t from x to it.
using PanelIntegrand = std::function<double(double x, const SingularFunction::Hint&)>;

double panel_value(const PanelIntegrand& g, const Panel& p, const QuadratureRule& gl);

// Appends proto split into subpanels.  cap_len > 0 caps the native length of
// each piece (uniform split); otherwise, when osc > 0, the panel is split so
// each piece spans phase at most kPhaseBudget of a kernel oscillating like
// cos(osc * theta), theta = arccos x.
void append_panel_split(std::vector<Panel>& out, const Panel& proto, double osc, double cap_len);

// Emits the geometric panels of the run at depth J = min(2 * half_depth,
// kMaxDepth) plus the two closing slivers, classified for the full/half meshes.
void emit_run_panels(std::vector<Panel>& out, const GradedRun& run, double osc, double cap_len);

// Picks the half-mesh depth: the first j >= kMinHalfDepth such that the
// contributions of geometric panels j-1 and j both fall below thr.
int probe_half_depth(const PanelIntegrand& g, const GradedRun& run, double thr, double osc,
                     double cap_len, const QuadratureRule& gl);

// Deterministic panel evaluation order: ascending x, with stable tie-breaks.
std::vector<int> sorted_panel_order(const std::vector<Panel>& panels);

struct MeshSums {
    double full = 0.0;
    double half = 0.0;
};

// Emits all panels of the runs, evaluates them, and reduces the full and
// half-depth meshes in ascending-x order with compensated summation.
MeshSums evaluate_run_mesh(const PanelIntegrand& g, const std::vector<GradedRun>& runs, double osc,
                           double cap_len, const QuadratureRule& gl);

// Doubles every run's half depth (up to the cap); false if none could grow.
bool escalate_runs(std::vector<GradedRun>& runs);

inline bool in_full_mesh(PanelClass c) { return c != PanelClass::SliverHalf; }
inline bool in_half_mesh(PanelClass c) {
    return c == PanelClass::Outer || c == PanelClass::SliverHalf;
}

}  // namespace detail
}  // namespace singspec
