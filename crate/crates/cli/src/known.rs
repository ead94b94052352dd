// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Published reference data re-checked by `table-verify`.

/// A three-term decoding polynomial `sum gamma^c X^e` with `gamma = x`.
pub struct KnownPolynomial {
    pub t: u32,
    pub m: u64,
    /// Low exponents of the field modulus `X^t + …`.
    pub modulus_tail: &'static [u32],
    /// `(exponent, power of gamma)` per term.
    pub terms: &'static [(u64, u64)],
}

pub const POLYNOMIALS: &[KnownPolynomial] = &[
    KnownPolynomial {
        t: 11,
        m: 2047,
        modulus_tail: &[2, 0],
        terms: &[(29, 1485), (27, 694), (0, 118)],
    },
    KnownPolynomial {
        t: 23,
        m: 8_388_607,
        modulus_tail: &[5, 0],
        terms: &[(3526, 6_526_329), (3363, 7_574_532), (0, 2_861_754)],
    },
];

/// `(t, p)`: `2^t - 1 = p q` with `p < q` both prime.
pub const MERSENNE_SEMIPRIMES: &[(u32, &str)] = &[
    (11, "23"),
    (23, "47"),
    (37, "223"),
    (41, "13367"),
    (59, "179951"),
    (67, "193707721"),
    (83, "167"),
    (97, "11447"),
    (101, "7432339208719"),
    (103, "2550183799"),
    (109, "745988807"),
    (131, "263"),
    (137, "32032215596496435569"),
    (139, "5625767248687"),
    (149, "86656268566282183151"),
    (167, "2349023"),
    (197, "7487"),
    (199, "164504919713"),
    (227, "26986333437777017"),
    (241, "22000409"),
    (269, "13822297"),
    (271, "15242475217"),
    (281, "80929"),
    (293, "40122362455616221971122353"),
    (347, "14143189112952632419639"),
    (373, "25569151"),
    (379, "180818808679"),
    (421, "614002928307599"),
    (457, "150327409"),
    (487, "4871"),
    (
        523,
        "160188778313202118610543685368878688932828701136501444932217468039063",
    ),
    (
        727,
        "17606291711815434037934881872331611670777491166445300472749449436575622328171096762265466521858927",
    ),
    (809, "4148386731260605647525186547488842396461625774241327567978137"),
    (881, "26431"),
    (971, "23917104973173909566916321016011885041962486321502513"),
    (983, "1808226257914551209964473260866417929207023"),
    (997, "167560816514084819488737767976263150405095191554732902607"),
    (1063, "1485761479"),
    (1427, "19054580564725546974193126830978590503"),
    (1487, "24464753918382797416777"),
    (1637, "81679753"),
    (2927, "1217183584262023230020873"),
    (3079, "25324846649810648887383180721"),
    (3259, "21926805872270062496819221124452121"),
    (3359, "6719"),
    (4243, "101833"),
    (4729, "61944189981415866671112479477273"),
    (5689, "919724609777"),
    (6043, "11155520642419038056369903183"),
    (7331, "458072843161"),
];
