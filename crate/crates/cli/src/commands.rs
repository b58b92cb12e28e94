use std::str::FromStr;

use equitau::acceptance;
use equitau::charclass::{EquivariantBundleSpec, ProjSpaceModel};
use equitau::error::Error;
use equitau::finitestab::{
    ktheory_dimension, sector_dimensions, support_subgroup, vistoli_kernel_dimension,
};
use equitau::gradedring::{GradedSeries, HPolynomial};
use equitau::lattice::{
    kernel_of_character_point, quotient_group, GroupDescriptor, TorsionCharacterPoint, Weight,
};
use equitau::reprring::{
    gl_augmentation_generators, ideal_membership_certificate, RationalGroupRingElement,
    RepRingElement,
};
use equitau::riemannroch::{euler_characteristic, verify_weyl};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::document::{character_json, series_json, OutputDocument};
use crate::{
    ChiArgs, FiniteGroupArgs, PushforwardArgs, SectorsArgs, SegalArgs, SelftestArgs, SupportArgs,
    WeylArgs,
};

/// Bad input; reported on stderr with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<OutputDocument, UsageError>;

fn chunk(values: &[i64], size: usize, what: &str) -> Result<Vec<Vec<i64>>, UsageError> {
    if size == 0 || !values.len().is_multiple_of(size) {
        return Err(UsageError(format!(
            "{what}: {} values cannot be split into vectors of length {size}",
            values.len()
        )));
    }
    Ok(values.chunks(size).map(<[i64]>::to_vec).collect())
}

/// A finite group from `--order d` or `--orders d1,d2,...`, together with
/// which user coordinates survive (orders equal to 1 carry no coordinate).
struct FiniteGroupInput {
    group: GroupDescriptor,
    orders: Vec<u64>,
}

impl FiniteGroupInput {
    fn parse(args: &FiniteGroupArgs, free_rank: usize) -> Result<Self, UsageError> {
        let orders = match (&args.order, &args.orders) {
            (Some(d), None) => vec![*d],
            (None, Some(ds)) => ds.clone(),
            (None, None) => Vec::new(),
            (Some(_), Some(_)) => {
                return Err(UsageError("give --order or --orders, not both".into()))
            }
        };
        let group = GroupDescriptor::new(free_rank, &orders)?;
        let kept: Vec<u64> = orders.iter().copied().filter(|&d| d != 1).collect();
        if group.torsion_orders() != kept.as_slice() {
            return Err(UsageError(format!(
                "orders {orders:?} are not in invariant-factor form (each must divide the next); the group is {group}"
            )));
        }
        Ok(FiniteGroupInput { group, orders })
    }

    /// Entries per user-supplied vector.
    fn width(&self) -> usize {
        self.group.free_rank() + self.orders.len()
    }

    fn keep(&self, i: usize) -> bool {
        i < self.group.free_rank() || self.orders[i - self.group.free_rank()] != 1
    }

    fn weight(&self, coords: &[i64]) -> Result<Weight, UsageError> {
        let kept: Vec<i64> = coords
            .iter()
            .enumerate()
            .filter(|(i, _)| self.keep(*i))
            .map(|(_, &c)| c)
            .collect();
        Ok(self.group.weight(&kept)?)
    }

    fn weights(&self, values: &[i64]) -> Result<Vec<Weight>, UsageError> {
        let width = self.width().max(1);
        chunk(values, width, "--weights")?
            .iter()
            .map(|w| {
                if self.width() == 0 {
                    Ok(self.group.zero())
                } else {
                    self.weight(w)
                }
            })
            .collect()
    }
}

fn torus_model(
    weights: &[i64],
    rank: usize,
    truncation: usize,
) -> Result<ProjSpaceModel, UsageError> {
    let vectors = chunk(weights, rank, "--weights")?;
    Ok(ProjSpaceModel::torus(&vectors, truncation)?)
}

pub fn chi(args: &ChiArgs, truncation: usize) -> CmdResult {
    let model = torus_model(&args.weights, args.rank, truncation)?;
    let group = model.group().clone();
    let bundle = if args.tangent {
        EquivariantBundleSpec::Tangent
    } else {
        let character = match &args.character {
            Some(c) => group.weight(c)?,
            None => group.zero(),
        };
        EquivariantBundleSpec::LineTwist {
            degree: args.twist,
            character,
        }
    };
    let result = euler_characteristic(&model, &bundle)?;

    let mut doc = OutputDocument::new("chi", truncation);
    doc.input("weights", args.weights.clone())
        .input("rank", args.rank);
    if args.tangent {
        doc.input("bundle", "tangent");
    } else {
        doc.input("bundle", "line").input("twist", args.twist);
        if let Some(c) = &args.character {
            doc.input("character", c.clone());
        }
    }
    let series_text = result.series.render();
    doc.line(format!("series: {series_text}"));
    match &result.oracle_character {
        Some(o) => {
            doc.line(format!("oracle: {}", o.render()));
            doc.line(format!("agree: {}", result.matches_oracle));
            doc.check("agree", result.matches_oracle);
        }
        None => {
            doc.line("oracle: not applicable");
        }
    }
    doc.results = json!({
        "agree": result.oracle_character.as_ref().map(|_| result.matches_oracle),
        "oracle": result.oracle_character.as_ref().map(character_json),
        "series": series_json(&result.series),
        "series_text": series_text,
    });
    Ok(doc)
}

pub fn weyl(args: &WeylArgs, truncation: usize) -> CmdResult {
    let report = verify_weyl(args.nmax, truncation)?;
    let mut doc = OutputDocument::new("weyl", truncation);
    doc.input("nmax", args.nmax);
    let mut rows = Vec::new();
    for row in &report.rows {
        let oracle = row.oracle_character.as_ref().map(RepRingElement::render);
        doc.line(format!(
            "n={} {}: {} | oracle {}",
            row.n,
            if row.pass { "pass" } else { "fail" },
            row.hrr.render(),
            oracle.as_deref().unwrap_or("n/a"),
        ));
        doc.check(format!("row n={}", row.n), row.pass);
        rows.push(json!({
            "closed_form": series_json(&row.closed_form),
            "hrr": series_json(&row.hrr),
            "hrr_text": row.hrr.render(),
            "n": row.n,
            "oracle": oracle,
            "pass": row.pass,
        }));
    }
    doc.results = json!({ "all_pass": report.all_pass(), "rows": rows });
    Ok(doc)
}

/// `Σ_i r_i^k / ∏_{j≠i} (r_i - r_j)` for the roots `r_i = -w_i` of the
/// relation, i.e. the pushforward of `h^k` by fixed-point localization.
fn localization_coefficient(weights: &[i64], k: usize) -> BigRational {
    let roots: Vec<BigInt> = weights.iter().map(|&w| BigInt::from(-w)).collect();
    let mut total = BigRational::zero();
    for (i, ri) in roots.iter().enumerate() {
        let mut denom = BigInt::one();
        for (j, rj) in roots.iter().enumerate() {
            if i != j {
                denom *= ri - rj;
            }
        }
        total += BigRational::new(ri.pow(k as u32), denom);
    }
    total
}

pub fn pushforward(args: &PushforwardArgs, truncation: usize) -> CmdResult {
    let model = torus_model(&args.weights, args.rank, truncation)?;
    let rank = model.rank();
    let p = HPolynomial::new(
        args.poly
            .iter()
            .map(|&a| GradedSeries::from_int(rank, truncation, a))
            .collect(),
    );
    let reduced = p.reduce(model.relation())?;
    let value = reduced.pushforward();

    let mut doc = OutputDocument::new("pushforward", truncation);
    doc.input("weights", args.weights.clone())
        .input("rank", args.rank)
        .input("poly", args.poly.clone());
    doc.line(format!("reduced: {}", reduced.render()));
    doc.line(format!("pushforward: {}", value.render()));

    let n = model.dimension();
    let mut distinct = args.weights.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut localization = None;
    if rank == 1 && distinct.len() == args.weights.len() {
        let mut expected = GradedSeries::zero(1, truncation);
        let mut ok = true;
        for (k, &a) in args.poly.iter().enumerate() {
            let c = localization_coefficient(&args.weights, k) * BigInt::from(a);
            if k < n {
                ok &= c.is_zero();
            } else if k - n <= truncation {
                expected.add_term(vec![(k - n) as u32], c);
            }
        }
        let pass = ok && expected == value;
        doc.line(format!("localization: {}", expected.render()));
        doc.check("localization", pass);
        localization = Some(series_json(&expected));
    }
    if args.weights == [1, -1] {
        // (p(t) - p(-t)) / 2t keeps a_k t^{k-1} for odd k
        let mut odd = GradedSeries::zero(1, truncation);
        for (k, &a) in args.poly.iter().enumerate() {
            if k % 2 == 1 && k - 1 <= truncation {
                odd.add_term(
                    vec![(k - 1) as u32],
                    BigRational::from_integer(BigInt::from(a)),
                );
            }
        }
        doc.check("odd part (p(t) - p(-t))/2t", odd == value);
    }
    doc.results = json!({
        "localization": localization,
        "pushforward": series_json(&value),
        "pushforward_text": value.render(),
        "reduced": reduced.render(),
    });
    Ok(doc)
}

pub fn sectors(args: &SectorsArgs, truncation: usize) -> CmdResult {
    let input = FiniteGroupInput::parse(&args.group, 0)?;
    let weights = input.weights(&args.weights)?;
    let model = ProjSpaceModel::new(&input.group, weights, truncation)?;
    let decomposition = sector_dimensions(&model)?;
    let ktheory = ktheory_dimension(&model)?;
    let total = decomposition.total();
    let untwisted = decomposition.untwisted_dimension();
    let kernel = vistoli_kernel_dimension(&decomposition);
    let coords = model.weights().len() as u64;

    let mut doc = OutputDocument::new("sectors", truncation);
    doc.input("orders", input.orders.clone())
        .input("weights", args.weights.clone());
    doc.line(format!("group: {}", input.group));
    doc.line("e  residue  support  fixed  dimension".to_string());
    let mut rows = Vec::new();
    for s in &decomposition.sectors {
        let fixed: Vec<String> = s.fixed_components.iter().map(ToString::to_string).collect();
        doc.line(format!(
            "{}  {}  {}  {}  {}",
            s.order,
            s.residue_degree,
            s.support,
            fixed.join(" "),
            s.sector_dimension
        ));
        rows.push(json!({
            "dimension": s.sector_dimension,
            "e": s.order,
            "fixed_components": s.fixed_components.iter().map(|c| c.coordinates.clone()).collect::<Vec<_>>(),
            "point": s.prime_point.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "residue_degree": s.residue_degree,
            "support": s.support.to_string(),
            "support_order": s.support.order(),
        }));
    }
    doc.line(format!("total: {total}"));
    doc.line(format!("untwisted: {untwisted}"));
    doc.line(format!("vistoli kernel: {kernel}"));
    doc.check(format!("total = {coords}d"), total == ktheory);

    // with trivial generic stabilizer the untwisted sector is all of CH*(P^n)
    let differences: Vec<Weight> = model
        .weights()
        .iter()
        .map(|w| input.group.add(w, &input.group.neg(&model.weights()[0])))
        .collect();
    if quotient_group(&input.group, &differences)?.order() == Some(1) {
        doc.check(format!("untwisted = {coords}"), untwisted == coords);
    }
    doc.results = json!({
        "group": input.group.to_string(),
        "ktheory_dimension": ktheory,
        "sectors": rows,
        "total": total,
        "untwisted": untwisted,
        "vistoli_kernel": kernel,
    });
    Ok(doc)
}

pub fn support(args: &SupportArgs, truncation: usize) -> CmdResult {
    let input = FiniteGroupInput::parse(&args.group, args.rank)?;
    if args.point.len() != input.width() {
        return Err(UsageError(format!(
            "--point needs {} values for {}, got {}",
            input.width(),
            input.group,
            args.point.len()
        )));
    }
    let mut values = Vec::new();
    for (i, text) in args.point.iter().enumerate() {
        let v = BigRational::from_str(text)
            .map_err(|_| UsageError(format!("--point: cannot parse {text:?}")))?;
        if input.keep(i) {
            values.push(v);
        } else if !v.is_integer() {
            return Err(UsageError(format!(
                "--point: {text} on a generator of order 1 must be an integer"
            )));
        }
    }
    let point = TorsionCharacterPoint::new(&input.group, values)?;
    let h = support_subgroup(&input.group, &point)?;
    let kernel = kernel_of_character_point(&input.group, &point)?;
    let order = point.order();

    let mut doc = OutputDocument::new("support", truncation);
    doc.input("orders", input.orders.clone())
        .input("point", args.point.clone())
        .input("rank", args.rank);
    doc.line(format!("N = {}", input.group));
    doc.line(format!("H = {h}"));
    doc.line(format!("order of point: {order}"));
    doc.check(
        "|H| = order of point",
        h.order().map(BigInt::from) == Some(order.clone()),
    );
    doc.results = json!({
        "group": input.group.to_string(),
        "kernel_generators": kernel.iter().map(|w| w.coords().to_vec()).collect::<Vec<_>>(),
        "point_order": order.to_string(),
        "support": h.to_string(),
        "support_order": h.order(),
    });
    Ok(doc)
}

pub fn segal(args: &SegalArgs, truncation: usize) -> CmdResult {
    if args.n == 0 {
        return Err(UsageError("--n must be at least 1".into()));
    }
    if args.index == 0 || args.index > args.n {
        return Err(UsageError(format!("--index must lie in 1..={}", args.n)));
    }
    let group = GroupDescriptor::free(args.n);
    let mut ti = vec![0; args.n];
    ti[args.index - 1] = 1;
    let base = RepRingElement::from_terms(
        &group,
        [(ti, BigInt::one()), (vec![0; args.n], -BigInt::one())],
    )?;
    let target = base.pow(args.degree);
    let gens = gl_augmentation_generators(args.n);
    let cert = ideal_membership_certificate(&target, &gens, args.bound)?;

    let mut doc = OutputDocument::new("segal", truncation);
    doc.input("n", args.n)
        .input("degree", args.degree)
        .input("index", args.index)
        .input("bound", args.bound);
    doc.line(format!("target: {}", target.render()));
    for (i, g) in gens.iter().enumerate() {
        doc.line(format!(
            "e{} - C({},{}): {}",
            i + 1,
            args.n,
            i + 1,
            g.render()
        ));
    }
    let results = match &cert {
        Some(c) => {
            doc.line(format!("status: found (box [-{0}, {0}])", c.bound));
            for (i, cof) in c.cofactors.iter().enumerate() {
                doc.line(format!("cofactor {}: {}", i + 1, cof.render()));
            }
            doc.check("re-expansion", c.verify(&target, &gens));
            json!({
                "box": c.bound,
                "cofactors": c.cofactors.iter().map(RationalGroupRingElement::render).collect::<Vec<_>>(),
                "status": "found",
            })
        }
        None => {
            doc.line(format!(
                "status: not_found within box [-{0}, {0}]",
                args.bound
            ));
            json!({ "box": args.bound, "cofactors": Value::Null, "status": "not_found" })
        }
    };
    let mut results = results;
    results["generators"] = json!(gens.iter().map(RepRingElement::render).collect::<Vec<_>>());
    results["target"] = json!(target.render());
    doc.results = results;
    Ok(doc)
}

pub fn selftest(args: &SelftestArgs, truncation: usize) -> CmdResult {
    let results = acceptance::run_all(args.seed);
    let mut doc = OutputDocument::new("selftest", truncation);
    doc.input("seed", args.seed);
    let mut rows = Vec::new();
    for r in &results {
        doc.line(r.line());
        doc.check(format!("[{}] {}", r.id, r.name), r.pass);
        rows.push(json!({ "detail": r.detail, "id": r.id, "name": r.name, "pass": r.pass }));
    }
    doc.results = json!({ "criteria": rows });
    Ok(doc)
}
