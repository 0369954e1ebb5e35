#pragma once
// Built-in experiment presets.  The same texts ship as files under
// presets/; a unit test keeps the two in sync.

#include <map>
#include <string>

namespace iondistill {

inline const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> table{
        {"cat2d",
         "# Distill the angular-momentum cat (|n_T=4,m=+4> + |n_T=4,m=-4>)/sqrt(2)\n"
         "# from the Fock state |n_x=4, n_y=0> in an isotropic 2D trap driven on the\n"
         "# second red sideband.  The surviving Omega*Omega^dag eigenvalue is 20\n"
         "# (n_T = 4, m = +-4); l = 2 sets gamma*tau = pi/sqrt(5).  Joint success\n"
         "# probability converges to 1/8; cat fidelity is ~0.993 after 5 steps.\n"
         "scenario = second_red_2d\n"
         "initial_occupation = 4,0\n"
         "target_eigenvalue = 20\n"
         "l = 2\n"
         "steps = 50\n"
         "mode = postselect\n"},
        {"cat2d-theta",
         "# Same cat distillation, but starting from motion along theta = pi/8 in\n"
         "# the x-y plane.  The distilled superposition carries the relative phase\n"
         "# 2*n_T*theta = pi, i.e. the sign-flipped cat; efficiency and fidelity\n"
         "# match the theta = 0 run.\n"
         "scenario = second_red_2d\n"
         "theta = 0.39269908169872414\n"
         "n_total = 4\n"
         "target_eigenvalue = 20\n"
         "l = 2\n"
         "steps = 50\n"
         "mode = postselect\n"},
        {"w3d",
         "# Distill |n_T=2, l=0, m=0> = (|200> + |020> + |002>)/sqrt(3), a W-shaped\n"
         "# entangled state of the three center-of-mass modes, from |2,0,0> in an\n"
         "# isotropic 3D trap.  Efficiency converges to 1/3; fidelity ~0.997 after\n"
         "# 5 steps.\n"
         "scenario = second_red_3d\n"
         "initial_occupation = 2,0,0\n"
         "target_eigenvalue = 20\n"
         "l = 2\n"
         "steps = 50\n"
         "mode = postselect\n"},
        {"squares",
         "# Blue-sideband coupling with gamma*tau = 2*pi (target eigenvalue 1 of\n"
         "# Omega*Omega^dag = N with l = 2) preserves exactly the perfect-square\n"
         "# Fock states.  From a flat superposition of n = 0..16 the surviving\n"
         "# support is {0, 1, 4, 9, 16}; the slowest non-square component decays\n"
         "# as |cos(2*pi*sqrt(12))|^N per step.\n"
         "scenario = blue_sideband\n"
         "initial_occupation = 0..16\n"
         "target_eigenvalue = 1\n"
         "l = 2\n"
         "steps = 40\n"
         "mode = postselect\n"},
        {"qnd",
         "# Quantum non-demolition selection of the n = 2 Fock state at Lamb-Dicke\n"
         "# eta = 0.2.  gamma*tau = 2*pi/f(2, eta) is encoded as the target\n"
         "# eigenvalue f(2, 0.2)^2 of Omega*Omega^dag = f(N, eta)^2 with l = 2;\n"
         "# conditioned on repeated ground-state readouts the motional state\n"
         "# collapses onto |2> with asymptotic probability 1/9.\n"
         "scenario = qnd\n"
         "eta = 0.2\n"
         "initial_occupation = 0..8\n"
         "target_eigenvalue = 0.8146270782581994\n"
         "l = 2\n"
         "steps = 60\n"
         "mode = postselect\n"},
    };
    return table;
}

}  // namespace iondistill
