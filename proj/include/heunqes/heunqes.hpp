#ifndef HEUNQES_HEUNQES_HPP
#define HEUNQES_HEUNQES_HPP

// Umbrella header for the quasi-exactly solvable sector of the confluent
// Heun equation: critical polynomials and their spectral roots, polynomial
// eigenfunctions, reductions to descendant equations, orthogonality
// structures, and the two-fixed-Coulomb-centers application.

#include "heunqes/bivariate.hpp"
#include "heunqes/cheq.hpp"
#include "heunqes/density.hpp"
#include "heunqes/errors.hpp"
#include "heunqes/family.hpp"
#include "heunqes/ortho.hpp"
#include "heunqes/polynomial.hpp"
#include "heunqes/rational.hpp"
#include "heunqes/reductions.hpp"
#include "heunqes/solution.hpp"
#include "heunqes/spectral.hpp"
#include "heunqes/twocenter.hpp"

#endif // HEUNQES_HEUNQES_HPP
