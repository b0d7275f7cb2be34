use coxhecke::affine_general::{
    dictionary_is_homomorphic, verify_theta_embedding, verify_type_a_cross_check,
    MergedInverseReading, ThetaEmbedding, XPairDictionary,
};
use coxhecke::embed::EdgeEmbedding;
use coxhecke::kmatrix::KMatrix;
use coxhecke::system::{CoxeterSystem, Edge};

fn main() {
    let sys = CoxeterSystem::type_a(3);
    let edge = Edge::new("2", "1");
    let branch = sys.find_linear_branch(&edge).unwrap().unwrap();
    let k = KMatrix::crystallographic(&sys).unwrap();
    let emb = EdgeEmbedding::new(&sys, &edge, k).unwrap();
    let temb = ThetaEmbedding::new(emb, branch, MergedInverseReading::TAtPlus).unwrap();
    println!("relations: passed={}", verify_theta_embedding(&temb).passed());
    for plus_minus in [true, false] {
        for reversed in [false, true] {
            let dict = XPairDictionary { plus_minus, reversed };
            let hom_src = dictionary_is_homomorphic(&temb.emb.source, dict);
            let hom_tgt = dictionary_is_homomorphic(&temb.emb.target, dict);
            println!("dict {}: hom(src)={hom_src} hom(tgt)={hom_tgt}", dict.name());
            if !(hom_src && hom_tgt) {
                continue;
            }
            for bl_iminus in 1..=2 {
                let rep = verify_type_a_cross_check(&temb, bl_iminus, dict).unwrap();
                let pass = rep
                    .checks
                    .iter()
                    .filter(|c| c.name == "type-a-cross-check")
                    .filter(|c| c.status == coxhecke::Status::Pass)
                    .count();
                let total = rep.checks.iter().filter(|c| c.name == "type-a-cross-check").count();
                println!("  bl_iminus={bl_iminus}: {pass}/{total} cross-checks pass");
            }
        }
    }
}
