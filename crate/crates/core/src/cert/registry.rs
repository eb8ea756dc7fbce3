//! Built-in claim registry. Every claim record's id and statement come from
//! here; the order of the table is the order of claims in a certificate.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub statement: &'static str,
}

const fn c(id: &'static str, statement: &'static str) -> ClaimSpec {
    ClaimSpec { id, statement }
}

static REGISTRY: &[ClaimSpec] = &[
    c("pol2.order", "coset enumeration of <a,b | a^9, b^9, b a b^-1 a^-4, a b a^-1 b^-4> over the trivial subgroup completes with 27 cosets"),
    c("pol2.enumeration_controls", "coset enumeration reproduces the orders of <a | a> (1) and <a,b | a^3, b^3, [a,b]> (9)"),
    c("pol2.model_relations", "in the model V x C3 of order 27: a^2 = (e1,t), a^3 = (e1+e2,1), b^3 = (2e1+2e2,1), b a b^-1 = a^4, a b a^-1 = b^4, and a, b generate"),
    c("pol2.model_presents", "the model elements a, b satisfy every relator of the input presentation and the model order equals the coset count"),
    c("pol2.exponent", "the model has exponent 9"),
    c("pol2.isomorphism_type", "the model is isomorphic to C9 x| C3 with action x -> 4x and not isomorphic to the Heisenberg group mod 3"),
    c("pol2.universal_degree", "the map C3 -> model, s -> a, t -> b is unital of degree exactly 2"),
    c("gamma.abelianization", "the abelianization of <a,b | (ba)^3, (ab^-1a)^3, [ba, ab^-1a]> has invariant factors [3, 9]"),
    c("gamma.cubic_derivation", "the eight relations imposed by a unital cubic map on a = phi(s), b = phi(t) imply z^3 = w^3 = v^3 = 1 (using 4^8 = 7 mod 9) and the three relators of Gamma"),
    c("gamma.converse_derivation", "the relators of Gamma imply that (a^-1 b a^-1, a^-1 b^-1) satisfies the degree-2 relations"),
    c("gamma.cubic_maps_vs_homs", "for each battery group H, the number of unital cubic maps C3 -> H equals |Hom(Gamma, H)|"),
    c("pol2.quadratic_maps_vs_homs", "for each battery group H, the number of unital quadratic maps C3 -> H equals |Hom(Pol2(C3), H)|"),
    c("c2.cubic_maps", "there are exactly 8 unital cubic maps C2 -> C8, matching |Hom(C8, C8)|"),
    c("char0.transcription", "pi(a) = r^2 A and pi(b) = r B with A, B invertible over Q(omega)"),
    c("char0.relators", "pi satisfies the relators of Gamma projectively, and a^9 is not a projective relator"),
    c("char0.grading", "for every word w of length at most the configured bound, pi(w) is homogeneous of r-degree d(w) mod 3 with d(a) = 2, d(b) = 1, and d(w) = -mu(w) mod 3"),
    c("char0.descent", "the kernel of mu: Gamma -> C3 has 4 Schreier generators whose pi-images, stripped of r-powers, lie in PSL3(Z[omega])"),
    c("char0.level0", "the images of the Schreier generators mod (1 - omega) generate the standard unitriangular subgroup of SL3(F3), of order 27"),
    c("char0.level1", "the level-1 logs of the kernel of the level-0 map span a 6-dimensional subspace of sl3(F3)/<I> equal to the image of {X11 = 0, X31 = 0}"),
    c("char0.index", "the index of pi(Gamma-circ) in PSL3(Z[omega]) reconstructed from levels 0 and 1 is 624 = 2^4 * 3 * 13"),
    c("char0.no_relation", "no nonempty freely reduced word of length at most L in x = a^3, y = b a^3 b^-1 is projectively trivial under pi"),
    c("char3.transcription", "det rho(a) = det rho(b) = 1"),
    c("char3.relators", "rho satisfies the relators of Gamma exactly"),
    c("char3.infinite_order", "rho(a) and rho(b) have infinite order (a power has trace outside F3); the test is inconclusive on the order-3 element ba"),
    c("char3.polynomial_images", "the rho-images of the Schreier generators of ker mu lie in SL3(F3[u]), u = t^3"),
    c("char3.level0", "the images of the Schreier generators mod u generate a group of order 27 conjugate to the standard unitriangular subgroup by the permutation (1 2)"),
    c("char3.level1", "the level-1 logs of the kernel of the level-0 map span a 7-dimensional subspace of sl3(F3)"),
    c("char3.elementary_words", "every E_ij(u^2), E_ij(u^3) is the rho-image of a word in the Schreier generators (bounded search)"),
    c("char3.steinberg", "commutators of the found elementary matrices generate every E_ij(u^n), n >= 2; generation of the level-2 congruence subgroup by elementary matrices is an assumed lemma"),
    c("char3.no_relation", "no nonempty freely reduced word of length at most L in x = a^3, y = b a^3 b^-1 is trivial under rho"),
    c("remark.no_intertwiner", "no automorphism of the unitriangular group U+ of SL3(F3) carries the mod-(1 - omega) images of the Schreier generators under pi to their mod-u images under rho"),
    c("nilpotency.depth", "for each n, the image of the level-1 kernel in SL3(F3[u]/u^n) has a nontrivial nested commutator with n - 1 entries and none with n"),
    c("classify.maps", "the unital polynomial maps of the given degree from the cyclic domain to the given group, with the count cross-checked against a homomorphism count"),
    c("search.elementary", "the target elementary matrix is the image of a word in the Schreier generators"),
    c("search.check_word", "the supplied word evaluates exactly to the target elementary matrix"),
];

pub fn registry() -> &'static [ClaimSpec] {
    REGISTRY
}

pub fn statement(id: &str) -> Option<&'static str> {
    REGISTRY.iter().find(|c| c.id == id).map(|c| c.statement)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique() {
        let mut ids: Vec<_> = REGISTRY.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
    }
}
