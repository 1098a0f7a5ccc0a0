//! Catalog of the statements the suites exercise.

/// `(id, statement)` for every in-scope statement.
pub static ANCHORS: &[(&str, &str)] = &[
    ("kernel-theorem", "a kernel κ and the operator S it represents have the same matrix: ⟨κ, η⊗ξ⟩ = ⟨Sξ, η⟩"),
    ("convolution", "f₂ * f₁ is the kernel of the composed operator"),
    ("wiener-ito-action", "Ξ_{l,m}(κ) acts on Wiener–Itô coefficients by g_{l+n} = (n+m)!/n! · κ ⊗_m f_{n+m}"),
    ("second-quantization", "Γ(T) is the unique operator with Γ(T)φ_ξ = φ_{Tξ}"),
    ("differential-second-quantization", "dΓ(T) = d/dθ Γ(e^{θT}) at θ = 0, equal to Ξ_{1,1}(T)"),
    ("exponential-vector", "a(f)φ_ξ = ⟨f, ξ⟩φ_ξ for the exponential vector φ_ξ"),
    ("number-operator", "N = Ξ_{1,1}(τ) multiplies the n-particle sector by n"),
    ("gross-laplacian", "Δ_G = Ξ_{0,2}(τ) = Σ a_i a_i"),
    ("skew-generator-kernel", "for skew X the kernel ⟨κ, η⊗ξ⟩ = ½⟨η, Xξ⟩ is skew"),
    ("rotation-generator", "Γ(e^{θX}) is a one-parameter group generated by dΓ(X) = 2Ξ_{1,1}(X/2)"),
    ("rotation-invariance", "N and Δ_G are invariant under Γ(g) for rotations g"),
    ("annihilation-creation", "a(f) = Ξ_{0,1}(f) and a*(f) = Ξ_{1,0}(f)"),
    ("qwn-derivatives", "D⁺_ζ Ξ = [a(ζ), Ξ] and D⁻_ζ Ξ = −[a*(ζ), Ξ]"),
    ("conservation-operator", "Λ(S) = Ξ_{1,1}(τ_S), with N = Λ(I)"),
    ("generalized-gross", "Δ_G(S) = Ξ_{0,2}(τ_S)"),
    (
        "derivatives-of-conservation-and-gross",
        "D⁺Δ_G(S) = 0, D⁻Δ_G(S) = a(Sζ) + a(S*ζ), D⁺Λ(S) = a(S*ζ), D⁻Λ(S) = a*(Sζ)",
    ),
    ("ccr", "[a_s, a_t] = 0, [a_s*, a_t*] = 0, [a_s, a_t*] = δ_s(t) Id"),
    ("generalized-ccr", "[Ξ_{0,1}(y), Ξ_{1,0}(ξ)] = ⟨y, ξ⟩ Id"),
    (
        "many-relations",
        "[a(ζ),a*(ζ)] = ⟨ζ,ζ⟩Id, [a(ζ),N] = a(ζ), [a(ζ),Δ_G] = 0, [a*(ζ),N] = −a*(ζ), [a*(ζ),Δ_G] = −2a(ζ), [Δ_G,N] = 2Δ_G, [N,Ξ_{0,m}(κ)] = −mΞ_{0,m}(κ)",
    ),
    ("conservation-bracket", "[Ξ_{1,1}(f₁), Ξ_{1,1}(f₂)] = Ξ_{1,1}(f₁*f₂ − f₂*f₁)"),
    ("annihilators-commute", "operators built only from annihilators commute with each other"),
    ("lie-base", "⟨Id, a(ζ), a*(ζ), N, Δ_G⟩ is five-dimensional, solvable and not nilpotent"),
    ("lie-pure-annihilation", "⟨N, Ξ_{0,m_1}(κ_1), …, Ξ_{0,m_n}(κ_n)⟩ is (n+1)-dimensional, solvable and not nilpotent"),
    ("fixed-point-algebra", "under KL = L̄K = K, K̄K = L, conj(Kζ) = ζ, Lζ = ζ the span of Id, a(ζ), a*(ζ), Λ(L), Δ*_G(K), Δ_G(K) is a six-dimensional non-solvable Lie algebra"),
    ("rotation-operator", "R_κ = 2Ξ_{1,1}(κ) for skew κ"),
    ("iterated-derivatives", "D^{k±}_ζ Ξ = ±[D^{(k−1)±}_ζ Ξ, Ξ]"),
    (
        "iterated-derivative-formulas",
        "for skew S: D^{k−}Λ(S) = a*(S^{k+1}ζ), D^{k+}Λ(S) = (−1)^{k+1}a(S^{k+1}ζ), D^{k±}Δ_G(S) = 0",
    ),
    ("commutator-identity", "[AB, C] = A[B, C] + [A, C]B"),
    ("quadratic-annihilation-bracket", "[Ξ_{0,2}(λ), Ξ_{1,1}(κ)] = Ξ_{0,2}(λ*κ) + Ξ_{0,2}(λᵀ*κ)"),
    ("gross-conservation-bracket", "[Δ_G, Ξ_{1,1}(κ)] = 2Ξ_{0,2}(κ)"),
    ("skew-quadratic-bracket", "[Ξ_{0,2}(κ), Ξ_{1,1}(κ)] = 0 for skew κ"),
    ("orbit-commutation-relations", "commutation relations among a(S^kζ), a*(S^kζ), N, Λ(S), Δ_G, Δ_G(S) for skew S"),
    ("lie-orbit-algebra", "⟨Id, a(S^kζ), a*(S^kζ), N, Λ(S), Δ_G, Δ_G(S)⟩ is solvable and not nilpotent"),
    ("finite-rank-orbit", "the orbit S^kζ lies in the range of S, so finite rank S or an eigenvector ζ of S^k gives a finite-dimensional algebra"),
    ("ideal-contains-identity", "every nonzero ideal not containing Δ_G(S) contains Id"),
    ("not-semisimple", "the orbit algebra is not semisimple"),
    ("normal-ordered-product", "the normal-ordered product of kernel operators agrees with their composition"),
];

/// Ids of every in-scope statement; the default suites must cover them all.
pub static IN_SCOPE: &[&str] = &[
    "kernel-theorem",
    "convolution",
    "wiener-ito-action",
    "second-quantization",
    "differential-second-quantization",
    "exponential-vector",
    "number-operator",
    "gross-laplacian",
    "skew-generator-kernel",
    "rotation-generator",
    "rotation-invariance",
    "annihilation-creation",
    "qwn-derivatives",
    "conservation-operator",
    "generalized-gross",
    "derivatives-of-conservation-and-gross",
    "ccr",
    "generalized-ccr",
    "many-relations",
    "conservation-bracket",
    "annihilators-commute",
    "lie-base",
    "lie-pure-annihilation",
    "fixed-point-algebra",
    "rotation-operator",
    "iterated-derivatives",
    "iterated-derivative-formulas",
    "commutator-identity",
    "quadratic-annihilation-bracket",
    "gross-conservation-bracket",
    "skew-quadratic-bracket",
    "orbit-commutation-relations",
    "lie-orbit-algebra",
    "finite-rank-orbit",
    "ideal-contains-identity",
    "not-semisimple",
];

pub fn statement(id: &str) -> Option<&'static str> {
    ANCHORS.iter().find(|(k, _)| *k == id).map(|(_, s)| *s)
}
