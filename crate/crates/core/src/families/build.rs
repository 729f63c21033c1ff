use super::{FamilyError, FamilySpec, Tag};
use crate::quiver::{validate, BoundQuiver};

#[derive(Default)]
struct Builder {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    relations: Vec<(String, String)>,
}

impl Builder {
    fn vertex(&mut self, v: &str) -> String {
        if !self.vertices.iter().any(|x| x == v) {
            self.vertices.push(v.to_string());
        }
        v.to_string()
    }

    /// `[v_0, .., v_len]` with `name_i: v_i -> v_{i-1}` for `i` from `first`.
    fn chain(&mut self, name: &str, first: u32, vs: &[String]) {
        for v in vs {
            self.vertex(v);
        }
        for (k, w) in vs.windows(2).enumerate() {
            let i = first + k as u32;
            self.arrows.push((format!("{name}{i}"), w[1].clone(), w[0].clone()));
        }
    }

    /// Path of `len` arrows from `start` to `end`; interior vertices `{inner}1..`.
    fn path(&mut self, name: &str, len: u32, start: &str, end: &str, inner: &str) {
        if len == 0 {
            return;
        }
        let mut vs = vec![end.to_string()];
        vs.extend((1..len).map(|i| format!("{inner}{i}")));
        vs.push(start.to_string());
        self.chain(name, 1, &vs);
    }

    fn arrow(&mut self, id: &str, s: &str, t: &str) {
        let (s, t) = (self.vertex(s), self.vertex(t));
        self.arrows.push((id.to_string(), s, t));
    }

    fn rel(&mut self, first: String, second: String) {
        self.relations.push((first, second));
    }

    /// `name_i name_{i+1}` for `i` in `lo..=hi`.
    fn window(&mut self, name: &str, lo: u32, hi: u32) {
        for i in lo.max(1)..=hi {
            self.rel(format!("{name}{i}"), format!("{name}{}", i + 1));
        }
    }

    fn finish(self, name: &str) -> BoundQuiver {
        BoundQuiver::new(name, &self.vertices, &self.arrows, &self.relations)
            .expect("family builders produce well-formed quivers")
    }
}

fn numbered(prefix: &str, range: std::ops::Range<u32>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// Builds the quiver of a family spec.
///
/// ```
/// use gentle::families::{build_family, FamilySpec, Tag};
/// let bq = build_family(&FamilySpec::new(Tag::L2, &[2, 1, 1, 0, 0])).unwrap();
/// assert_eq!(bq.vertex_count(), 3);
/// assert_eq!(bq.cycle_rank().unwrap(), 2);
/// ```
pub fn build_family(spec: &FamilySpec) -> Result<BoundQuiver, FamilyError> {
    spec.check()?;
    let p = &spec.params;
    let mut b = Builder::default();
    match spec.tag {
        Tag::L0 => {
            let (pp, r) = (p[0], p[1]);
            let top = format!("w{pp}");
            b.path("alpha", pp, &top, "w0", "w");
            b.arrow("beta", "w0", &top);
            b.arrow("gamma", "w0", &top);
            b.rel(format!("alpha{pp}"), "beta".into());
            b.rel("gamma".into(), "alpha1".into());
            b.window("alpha", 1, r);
        }
        Tag::L0p => {
            let (pp, r) = (p[0], p[1]);
            b.path("alpha", pp, "B", "L", "a");
            b.arrow("beta", "B", "L");
            b.arrow("gamma", "C", "B");
            b.arrow("delta", "C", "B");
            b.window("alpha", 1, r);
            b.rel(format!("alpha{pp}"), "gamma".into());
            b.rel("beta".into(), "delta".into());
        }
        Tag::L1 => {
            let (p1, p2, p3, p4, r1) = (p[0], p[1], p[2], p[3], p[4]);
            let l = "L";
            let rv = if p3 == 0 && p4 == 0 { "L" } else { "R" };
            let m = if p3 == 0 { rv } else if p4 == 0 { l } else { "M" };
            b.vertex(l);
            b.path("alpha", p1, l, rv, "a");
            b.path("beta", p2, rv, l, "b");
            b.path("gamma", p3, rv, m, "c");
            b.path("delta", p4, l, m, "d");
            b.window("alpha", p1 - r1, p1 - 1);
            b.rel(format!("alpha{p1}"), "beta1".into());
            b.window("beta", 1, p2 - 1);
            b.rel(format!("beta{p2}"), "alpha1".into());
        }
        Tag::L2 => {
            let (p1, p2, p3, r1, r2) = (p[0], p[1], p[2], p[3], p[4]);
            let bv = if p3 == 0 { "A" } else { "B" };
            b.vertex("A");
            two_cycles(&mut b, "A", bv, p1, p2, r1, r2);
            b.path("gamma", p3, bv, "A", "c");
        }
        Tag::L2pSix => {
            let (p1, p2, p3, p4, r1, r2) = (p[0], p[1], p[2], p[3], p[4], p[5]);
            let bv = if p3 == 0 && p4 == 0 { "A" } else { "B" };
            let m = if p3 == 0 { "A" } else if p4 == 0 { bv } else { "M" };
            b.vertex("A");
            two_cycles(&mut b, "A", bv, p1, p2, r1, r2);
            b.path("gamma", p3, m, "A", "c");
            b.path("delta", p4, m, bv, "d");
        }
        Tag::L2pFive => {
            let (p1, p2, p3, r1, r2) = (p[0], p[1], p[2], p[3], p[4]);
            b.path("alpha", p1, "A", "B", "a");
            b.arrow("beta", "B", "A");
            b.path("delta", p3, "A", "Z", "d");
            b.path("gamma", p2, "B", "Z", "c");
            b.window("alpha", p1 - r1, p1 - 1);
            b.rel(format!("alpha{p1}"), "beta".into());
            b.rel("beta".into(), "alpha1".into());
            b.window("gamma", 1, r2);
        }
        Tag::G0 | Tag::G1 | Tag::G2 => {
            let (pp, q, r) = (p[0], p[1], p[2]);
            let r2 = if spec.tag == Tag::G0 { 0 } else { p[3] };
            let (ext_a, ext_b) = if spec.tag == Tag::G2 { (0, r2) } else { (r2, 0) };
            let mut avs = vec!["x".to_string()];
            avs.extend(numbered("a", 1..pp));
            avs.push("y".into());
            avs.extend(numbered("a", pp..pp + ext_a));
            avs.push("z".into());
            b.chain("alpha", 1, &avs);
            let mut bvs = vec!["x".to_string()];
            bvs.extend(numbered("b", 1..q));
            bvs.push("y".into());
            bvs.extend(numbered("b", q..q + ext_b));
            bvs.push("z".into());
            b.chain("beta", 1, &bvs);
            b.window("alpha", pp - r, pp + ext_a);
            b.window("beta", q, q + ext_b);
        }
    }
    let name: Vec<String> =
        std::iter::once(spec.tag.to_string()).chain(p.iter().map(|x| x.to_string())).collect();
    let bq = b.finish(&name.join("_"));
    assert_eq!(bq.vertex_count(), spec.vertex_count(), "{spec}: vertex count");
    assert_eq!(bq.arrow_count(), bq.vertex_count() + 1, "{spec}: arrow count");
    assert!(bq.is_connected(), "{spec}: not connected");
    if let Err(v) = validate(&bq) {
        panic!("{spec}: not gentle: {v:?}");
    }
    Ok(bq)
}

fn two_cycles(b: &mut Builder, a: &str, bv: &str, p1: u32, p2: u32, r1: u32, r2: u32) {
    b.path("alpha", p1, a, a, "a");
    b.path("beta", p2, bv, bv, "b");
    b.window("alpha", p1 - r1, p1 - 1);
    b.rel(format!("alpha{p1}"), "alpha1".into());
    b.window("beta", p2 - r2, p2 - 1);
    b.rel(format!("beta{p2}"), "beta1".into());
}
