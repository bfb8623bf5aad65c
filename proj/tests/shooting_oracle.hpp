#pragma once

// Radial shooting oracle for the reference problem N=3, alpha=2, p=q=2,
// A=B=1. With u = v the system reduces to -Lap u + u = (I_2 * u^2) u; the
// oracle integrates the radial ODE pair and returns the action level of the
// coupled system at its ground state. Independent of the spectral solver.
double shooting_reference_level();
