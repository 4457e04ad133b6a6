//! Test corpus: PD codes drawn from braid closures and 4-plats, plus a few
//! hand-entered classics.
#![allow(dead_code)]

use bdc_core::checkerboard::Sign;
use bdc_core::presentation::presentation_from_stars;
use bdc_core::{
    abelianization_matrix, analyze, build_diagram, check_alternating, parse_pd, split_components,
    vertex_star, ColorChoice, LinkDiagram, Options, PdCode,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
pub const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
pub const HOPF: &str = "X(1,3,2,4) X(3,1,4,2)";

pub fn diagram(code: &str) -> LinkDiagram {
    build_diagram(parse_pd(code).unwrap()).unwrap()
}

enum Closure<'a> {
    Braid,
    /// Non-crossing strand pairs joined above and below the braid.
    Plat(&'a [(usize, usize)]),
}

struct Labels {
    parent: Vec<u32>,
}

impl Labels {
    fn fresh(&mut self) -> u32 {
        self.parent.push(self.parent.len() as u32);
        self.parent.len() as u32 - 1
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        self.parent[a.max(b) as usize] = a.min(b);
    }
}

/// Draws the braid top to bottom; generator `±i` crosses strands `i`, `i+1`
/// (1-based). For positive letters the NW-SE strand passes over.
fn braid_pd(strands: usize, word: &[i32], closure: Closure) -> PdCode {
    let mut labels = Labels { parent: Vec::new() };
    let top: Vec<u32> = match closure {
        Closure::Braid => (0..strands).map(|_| labels.fresh()).collect(),
        Closure::Plat(pairs) => {
            assert_eq!(2 * pairs.len(), strands);
            let mut top = vec![u32::MAX; strands];
            for &(a, b) in pairs {
                let l = labels.fresh();
                top[a] = l;
                top[b] = l;
            }
            top
        }
    };
    let mut cur = top.clone();
    let mut raw = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands);
        let (nw, ne) = (cur[i], cur[i + 1]);
        let (sw, se) = (labels.fresh(), labels.fresh());
        // Counterclockwise from NE: NE, NW, SW, SE.
        let tuple = if g > 0 {
            [ne, nw, sw, se]
        } else {
            [nw, sw, se, ne]
        };
        raw.push(tuple);
        cur[i] = sw;
        cur[i + 1] = se;
    }
    match closure {
        Closure::Braid => {
            for i in 0..strands {
                labels.union(cur[i], top[i]);
            }
        }
        Closure::Plat(pairs) => {
            for &(a, b) in pairs {
                labels.union(cur[a], cur[b]);
            }
        }
    }
    let crossings: Vec<[u32; 4]> = raw.iter().map(|t| t.map(|l| labels.find(l) + 1)).collect();
    let mut used: Vec<u32> = crossings.iter().flatten().copied().collect();
    used.sort();
    used.dedup();
    let mut roots: Vec<u32> = (0..labels.parent.len() as u32)
        .map(|l| labels.find(l) + 1)
        .collect();
    roots.sort();
    roots.dedup();
    let extras = roots
        .iter()
        .filter(|r| used.binary_search(r).is_err())
        .count();
    PdCode::new(crossings, extras).unwrap().canonical()
}

pub fn braid_closure(strands: usize, word: &[i32]) -> PdCode {
    braid_pd(strands, word, Closure::Braid)
}

/// 4-plat of the continued fraction `[a1, ..., ak]`, `k` odd:
/// σ2^a1 σ1^-a2 σ2^a3 ..., capped and cupped in pairs. With `k` even the
/// last twists would be undone by the cups.
pub fn two_bridge(coefficients: &[i32]) -> PdCode {
    assert!(coefficients.len() % 2 == 1);
    let mut word = Vec::new();
    for (j, &a) in coefficients.iter().enumerate() {
        let g = if j % 2 == 0 { 2 } else { -1 };
        for _ in 0..a {
            word.push(g);
        }
    }
    braid_pd(4, &word, Closure::Plat(&[(0, 1), (2, 3)]))
}

/// Pretzel link with three twist columns of `p`, `q`, `r` half-twists:
/// columns on strands (1,2), (3,4), (5,6), joined by the arcs 2-3, 4-5 and
/// an outer arc 1-6 above and below.
pub fn pretzel(p: usize, q: usize, r: usize) -> PdCode {
    let word: Vec<i32> = [(1, p), (3, q), (5, r)]
        .iter()
        .flat_map(|&(g, n)| std::iter::repeat_n(g, n))
        .collect();
    braid_pd(6, &word, Closure::Plat(&[(0, 5), (1, 2), (3, 4)]))
}

/// Numerator of a1 + 1/(a2 + 1/(...)).
pub fn continued_fraction_numerator(coefficients: &[i32]) -> i64 {
    let (mut p, mut q) = (1i64, 0i64);
    for &a in coefficients.iter().rev() {
        let next = a as i64 * p + q;
        q = p;
        p = next;
    }
    p
}

/// Named corpus entry with its expected determinant from an independent
/// source (braid/continued-fraction arithmetic or a hand Goeritz matrix).
pub struct Entry {
    pub name: String,
    pub pd: PdCode,
    pub det: i64,
}

fn entry(name: impl Into<String>, pd: PdCode, det: i64) -> Entry {
    Entry {
        name: name.into(),
        pd,
        det,
    }
}

/// Alternating diagrams. Determinants: (2,n) torus links have det n,
/// twist knots have det 2n+1, 2-bridge links have the numerator of
/// their continued fraction, unknot diagrams have det 1.
pub fn alternating_corpus() -> Vec<Entry> {
    let mut out = vec![
        entry("trefoil", parse_pd(TREFOIL).unwrap(), 3),
        entry("figure-eight", parse_pd(FIGURE_EIGHT).unwrap(), 5),
        entry("hopf", parse_pd(HOPF).unwrap(), 2),
        entry("kink", parse_pd("X(1,2,2,1)").unwrap(), 1),
        entry("kink-b", parse_pd("X(1,1,2,2)").unwrap(), 1),
        entry("unknot", parse_pd("U(1)").unwrap(), 1),
    ];
    for n in 2..=9 {
        out.push(entry(
            format!("T(2,{n})"),
            braid_closure(2, &vec![1; n as usize]),
            n,
        ));
    }
    // Twist knots: n + 1/2 = [n, 1, 1].
    for n in 1..=6 {
        out.push(entry(
            format!("twist-{n}"),
            two_bridge(&[n, 1, 1]),
            2 * n as i64 + 1,
        ));
    }
    for cf in [[2, 1, 2], [3, 1, 2], [2, 2, 2], [1, 3, 2], [2, 1, 1]] {
        out.push(entry(
            format!("two-bridge-{cf:?}"),
            two_bridge(&cf),
            continued_fraction_numerator(&cf),
        ));
    }
    // Pretzel links: det = pq + qr + rp.
    for (p, q, r) in [(2, 3, 3), (2, 2, 3), (3, 3, 3), (2, 3, 5)] {
        let det = (p * q + q * r + r * p) as i64;
        out.push(entry(format!("P({p},{q},{r})"), pretzel(p, q, r), det));
    }
    // Alternating 3-braids (σ1 σ2^-1)^k: k=2 figure-eight, k=3 Borromean.
    for (k, det) in [(1, 1), (2, 5), (3, 16), (4, 45)] {
        let word: Vec<i32> = (0..k).flat_map(|_| [1, -2]).collect();
        out.push(entry(
            format!("(s1 s2^-1)^{k}"),
            braid_closure(3, &word),
            det,
        ));
    }
    // Alternating unknot diagrams with several crossings.
    out.push(entry("unknot-4", braid_closure(5, &[1, -2, 3, -4]), 1));
    out.push(entry("unknot-3", braid_closure(4, &[1, -2, 3]), 1));
    out.push(entry("unknot-1", braid_closure(2, &[1]), 1));
    out
}

/// Split diagrams: (name, code, per-component determinants).
pub fn split_corpus() -> Vec<(String, PdCode, Vec<i64>)> {
    let t = parse_pd(TREFOIL).unwrap();
    let f = parse_pd(FIGURE_EIGHT).unwrap();
    let u = parse_pd("U(1)").unwrap();
    let k = parse_pd("X(1,2,2,1)").unwrap();
    vec![
        ("trefoil+unknot".into(), t.disjoint_union(&u), vec![3, 1]),
        ("trefoil+trefoil".into(), t.disjoint_union(&t), vec![3, 3]),
        ("unlink-2".into(), u.disjoint_union(&u), vec![1, 1]),
        ("kink+unknot".into(), k.disjoint_union(&u), vec![1, 1]),
        ("figure-eight+kink".into(), f.disjoint_union(&k), vec![5, 1]),
    ]
}

/// Flips one crossing of an alternating code by rotating its tuple.
pub fn crossing_change(pd: &PdCode, crossing: usize) -> PdCode {
    let mut crossings = pd.crossings().to_vec();
    crossings[crossing].rotate_left(1);
    PdCode::new(crossings, pd.unknotted_extras()).unwrap()
}

/// Random labelings of `n` crossings, kept only when they pass the planar
/// validator.
pub fn random_valid_pd(rng: &mut impl Rng, max_crossings: usize) -> PdCode {
    loop {
        let n = rng.gen_range(1..=max_crossings);
        let mut labels: Vec<u32> = (1..=2 * n as u32).flat_map(|a| [a, a]).collect();
        labels.shuffle(rng);
        let crossings: Vec<[u32; 4]> = labels.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
        let pd = PdCode::new(crossings, 0).unwrap();
        if build_diagram(pd.clone()).is_ok() {
            return pd;
        }
    }
}

/// Random braid closures on up to 4 strands; always planar.
pub fn random_braid_pd(rng: &mut impl Rng, max_len: usize) -> PdCode {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_len);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    braid_closure(strands, &word)
}

const CHOICES: [ColorChoice; 2] = [ColorChoice::FirstFaceWhite, ColorChoice::FirstFaceBlack];

/// Structural invariants of the whole pipeline on one code.
pub fn check_structure(pd: &PdCode) -> Result<(), String> {
    let d = build_diagram(pd.clone()).map_err(|e| e.to_string())?;
    let n = d.crossing_count();
    if d.dart_count() != 4 * n || pd.arc_count() != 2 * n {
        return Err("dart/arc count".into());
    }
    for i in 0..d.dart_count() {
        let x = bdc_core::diagram::Dart::from_index(i);
        if d.twin(x) == x || d.twin(d.twin(x)) != x {
            return Err(format!(
                "twin is not a fixed-point-free involution at {x:?}"
            ));
        }
    }
    let parts = split_components(&d);
    let total: usize = parts.iter().map(|p| p.crossing_count()).sum();
    if total != n || parts.len() != d.component_count() {
        return Err("split_components is not a partition".into());
    }
    for part in &parts {
        let m = part.crossing_count();
        if split_components(part).len() != 1 {
            return Err("split of a component is not a singleton".into());
        }
        if m > 0 && part.face_count() != m + 2 {
            return Err(format!("{} faces for {m} crossings", part.face_count()));
        }
        let alternating = check_alternating(part).alternating;
        for color in CHOICES {
            let a = analyze(part, &Options { color, root: None }).map_err(|e| e.to_string())?;
            let w = &a.white_graph;
            let p = &a.presentation;
            if w.edges().len() != m {
                return Err(format!("{} white edges for {m} crossings", w.edges().len()));
            }
            if m > 0 {
                let c = a.coloring.as_ref().unwrap();
                let whites = c.faces_of(bdc_core::Color::White).count();
                let blacks = c.faces_of(bdc_core::Color::Black).count();
                if whites + blacks != m + 2 {
                    return Err("color classes do not cover the faces".into());
                }
            }
            if !w.contains(w.root()) || !w.is_connected() {
                return Err("root missing or white graph disconnected".into());
            }
            if alternating && m > 0 && w.uniform_sign().is_none() {
                return Err("alternating diagram with mixed signs".into());
            }
            if p.relators().len() != w.vertices().len() + 1 {
                return Err("relator count".into());
            }
            let faces = &p.origin().unwrap().faces;
            let mut star_total = 0;
            let mut relator_total = 0;
            for (g, &v) in faces.iter().enumerate() {
                let star = vertex_star(w, part, v).map_err(|e| e.to_string())?;
                star_total += star.incidences.len();
                let r = p.vertex_relator(g).unwrap();
                relator_total += r.len();
                if r.len() != 2 * w.degree(v) || r.total_exponent() != 0 {
                    return Err(format!(
                        "relator of x{} has length {} and degree {}",
                        g + 1,
                        r.len(),
                        w.degree(v)
                    ));
                }
                if alternating && w.uniform_sign() == Some(Sign::Positive) {
                    let positive = r
                        .syllables()
                        .chunks(2)
                        .all(|b| b[0].exponent == -1 && b[1].exponent == 1 && b[1].generator == g);
                    if !positive {
                        return Err("positive-sign relator not made of x_w^-1 x_v blocks".into());
                    }
                }
            }
            if star_total != 2 * m || relator_total != 4 * m {
                return Err("star or relator lengths do not sum to 2n / 4n".into());
            }
            if p.relators().last().unwrap().total_exponent() != 1 {
                return Err("root relator".into());
            }
            let matrix = abelianization_matrix(p).to_i64_rows().unwrap();
            for (i, row) in matrix.iter().enumerate().take(faces.len()) {
                if row.iter().sum::<i64>() != 0 {
                    return Err(format!("row {i} of the relation matrix does not sum to 0"));
                }
            }
        }
    }
    Ok(())
}

/// Presentation built with every star started `shifts[g]` places later.
pub fn rotated_presentation(
    d: &LinkDiagram,
    options: &Options,
    shifts: &[usize],
) -> bdc_core::GroupPresentation {
    let a = analyze(d, options).unwrap();
    let faces = a.presentation.origin().unwrap().faces.clone();
    let stars: Vec<_> = faces
        .iter()
        .zip(shifts.iter().cycle())
        .map(|(&v, &k)| vertex_star(&a.white_graph, d, v).unwrap().rotated(k))
        .collect();
    presentation_from_stars(&a.white_graph, &stars)
}

/// Every transformation that must leave det, the invariant factors and the
/// verdict unchanged: (label, transformed diagram, options).
pub fn variants(pd: &PdCode, rng: &mut impl Rng) -> Vec<(String, LinkDiagram, Options)> {
    let d = build_diagram(pd.clone()).unwrap();
    let mut out = vec![
        ("identity".to_string(), d.clone(), Options::default()),
        (
            "color swap".into(),
            d.clone(),
            Options {
                color: ColorChoice::FirstFaceBlack,
                root: None,
            },
        ),
        ("mirror".into(), d.mirror(), Options::default()),
        (
            "mirror + color swap".into(),
            d.mirror(),
            Options {
                color: ColorChoice::FirstFaceBlack,
                root: None,
            },
        ),
    ];
    if d.is_connected_with_crossings() {
        for color in CHOICES {
            let c = bdc_core::color_faces(&d, color).unwrap();
            for root in c.faces_of(bdc_core::Color::White) {
                out.push((
                    format!("root {root} ({color:?})"),
                    d.clone(),
                    Options {
                        color,
                        root: Some(root),
                    },
                ));
            }
        }
    }
    let mut labels: Vec<u32> = (1..=pd.arc_count() as u32).map(|a| 7 * a + 3).collect();
    labels.shuffle(rng);
    let canon = pd.canonical();
    let relabeled = canon.relabel(|a| labels[a as usize - 1]).unwrap();
    out.push((
        "relabel".into(),
        build_diagram(relabeled).unwrap(),
        Options::default(),
    ));
    let mut order: Vec<usize> = (0..pd.crossing_count()).collect();
    order.shuffle(rng);
    out.push((
        "reorder".into(),
        build_diagram(pd.reorder(&order)).unwrap(),
        Options::default(),
    ));
    out
}
