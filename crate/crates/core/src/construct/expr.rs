use std::fmt;

/// Abstract syntax of the ring-construction language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    /// Integers modulo `n`.
    Zn(usize),
    /// Direct product of the factors.
    Prod(Vec<RingExpr>),
    /// Full `k × k` matrices.
    Mat(usize, Box<RingExpr>),
    /// Upper-triangular `k × k` matrices.
    Tri(usize, Box<RingExpr>),
    /// Upper-triangular `k × k` matrices with constant diagonal.
    EqDiag(usize, Box<RingExpr>),
    /// Idealization `R ⊕ M` with `(r,m)(r',m') = (rr', rm' + r'm)`.
    Idealize(Box<RingExpr>, ModuleSpec),
    /// Corner ring `fRf`, with `f` given by element index.
    Corner(Box<RingExpr>, usize),
    /// Quotient by the two-sided ideal generated by the listed elements.
    Quot(Box<RingExpr>, Vec<usize>),
    /// Truncated skew polynomials `R[x; σ]/(x^n)`.
    SkewPolyQuot(Box<RingExpr>, EndoSpec, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    /// `M = R` acting on itself by left multiplication.
    SelfModule,
    /// `M = Z(m)` over `R = Z(n)`, requires `m | n`.
    CyclicModule(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EndoSpec {
    Identity,
    /// Permutes the factors of a product ring: factor `i` of `σ(a)` is
    /// factor `p[i]` of `a` (0-based).
    FactorPermutation(Vec<usize>),
}

impl EndoSpec {
    /// Transposition of the 1-based factors `i` and `j` among `k`
    /// (`k` is raised to `max(i, j)` if smaller).
    pub fn swap(i: usize, j: usize, k: usize) -> EndoSpec {
        let k = k.max(i).max(j);
        let mut p: Vec<usize> = (0..k).collect();
        if i >= 1 && j >= 1 {
            p.swap(i - 1, j - 1);
        }
        EndoSpec::FactorPermutation(p)
    }
}

fn join(items: &[RingExpr]) -> String {
    items
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Z({n})"),
            RingExpr::Prod(items) => write!(f, "prod({})", join(items)),
            RingExpr::Mat(k, e) => write!(f, "M{k}({e})"),
            RingExpr::Tri(k, e) => write!(f, "T{k}({e})"),
            RingExpr::EqDiag(k, e) => write!(f, "eqdiag{k}({e})"),
            RingExpr::Idealize(e, m) => write!(f, "idealize({e},{m})"),
            RingExpr::Corner(e, i) => write!(f, "corner({e},{i})"),
            RingExpr::Quot(e, gens) => {
                let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "quot({e},[{}])", g.join(","))
            }
            RingExpr::SkewPolyQuot(e, s, n) => write!(f, "skew({e},{s},{n})"),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::SelfModule => write!(f, "self"),
            ModuleSpec::CyclicModule(m) => write!(f, "Z({m})"),
        }
    }
}

impl fmt::Display for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoSpec::Identity => write!(f, "id"),
            EndoSpec::FactorPermutation(p) => {
                let moved: Vec<usize> = (0..p.len()).filter(|&i| p[i] != i).collect();
                if moved.len() == 2 && p[moved[0]] == moved[1] {
                    write!(f, "swap({},{})", moved[0] + 1, moved[1] + 1)
                } else {
                    let items: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
                    write!(f, "perm({})", items.join(","))
                }
            }
        }
    }
}
