#pragma once

#include "uag/dsl.hpp"

// Shared fixture algebras and word systems. Group signature order is
// e/0, inv/1, mul/2; semigroups have mul/2 only; semilattices meet/2.
namespace fx {

using namespace uag;

SignatureRef grp();
SignatureRef sgr();
SignatureRef slat();

AlgebraRef z2();
AlgebraRef z3();
AlgebraRef z4();
AlgebraRef k4();
AlgebraRef s3();
AlgebraRef q8();
AlgebraRef one_grp();
AlgebraRef lz2();
AlgebraRef rz2();
AlgebraRef lzrz();   // LZ2 x RZ2 rectangular band
AlgebraRef one_sgr();
AlgebraRef s2_meet();

WordSystem wid_grp();
WordSystem wid_sgr();
WordSystem wop_sgr();   // mul -> mul(x2,x1)
WordSystem wop_grp();   // opposite multiplication in group signature
WordSystem wq8();       // mul -> x1*x2*(x2,x1)^2

// Group-signature term builders (e=0, inv=1, mul=2).
Term ge();
Term ginv(Term t);
Term gmul(Term a, Term b);
// Semigroup/semilattice binary op (index 0).
Term bop(Term a, Term b);

EquationSystem square_trivial();  // mul(x1,x1) = e, rank 1
EquationSystem commuting_pair();  // mul(x1,x2) = mul(x2,x1), rank 2
EquationSystem empty_system(int rank);

// Every fixture, plus the systems and word systems, as one model.
ModelFile full_model();

}  // namespace fx
