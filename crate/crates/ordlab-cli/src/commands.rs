//! One function per subcommand, each returning report rows. The binary
//! parses flags and picks an encoder; everything observable lives here so
//! tests can drive the exact strings the tool prints.

use ordlab_core::arith::{
    index_mod, is_admissible, order_mod, primitive_root, Admissibility, PrimeContext, RationalBase,
};
use ordlab_core::census::{
    count_simultaneous, decomposition_audit, main_term, totient_product_avg, CensusQuery,
    CensusReport,
};
use ordlab_core::expsum::{self, PeriodicElement};
use ordlab_core::indicator::{
    indicator_char_sum, indicator_direct, indicator_exp_sum_residue, OrderSpec,
};
use ordlab_core::stats::{avg_order, equal_order_probability_sampled};
use ordlab_core::{Error, Result};

use crate::parallel::{census_parallel, sampled_parallel};
use crate::report::Row;

pub fn order_rows(p: u64, u: &RationalBase) -> Result<Vec<Row>> {
    let ctx = PrimeContext::new(p)?;
    let ord = order_mod(u, &ctx)?;
    let index = index_mod(u, &ctx)?;
    Ok(vec![Row::new()
        .uint("p", p)
        .text("u", u.to_string())
        .uint("ord", ord)
        .uint("index", index)])
}

pub fn primitive_root_rows(p: u64) -> Result<Vec<Row>> {
    Ok(vec![Row::new()
        .uint("p", p)
        .uint("tau", primitive_root(p)?)])
}

pub fn admissible_rows(bases: &[RationalBase]) -> Result<Vec<Row>> {
    let tuple: Vec<String> = bases.iter().map(|b| b.to_string()).collect();
    let row = Row::new().text("bases", tuple.join(";"));
    Ok(vec![match is_admissible(bases)? {
        Admissibility::Admissible => row
            .uint("admissible", 1)
            .text("witness", "")
            .text("witness_product", ""),
        Admissibility::Inadmissible {
            witness,
            product_is_minus_one,
        } => {
            let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            row.uint("admissible", 0).text("witness", w.join(";")).text(
                "witness_product",
                if product_is_minus_one { "-1" } else { "+1" },
            )
        }
    }])
}

pub fn indicator_rows(p: u64, u: &RationalBase, d: u64) -> Result<Vec<Row>> {
    let ctx = PrimeContext::new(p)?;
    let spec = OrderSpec::new(*u, d)?;
    let direct = indicator_direct(&spec, &ctx)?;
    let residue = u.reduce_mod(p)?;
    let exp = indicator_exp_sum_residue(residue, d, &ctx)?;
    let row = Row::new()
        .uint("p", p)
        .text("u", u.to_string())
        .uint("d", d)
        .uint("direct", direct as u64)
        .float("exp_value", exp.value)
        .uint("exp_rounded", exp.rounded as u64)
        .float("exp_residual", exp.residual);
    // The character route only detects primitive roots.
    let row = if d == 1 {
        let chi = indicator_char_sum(residue, &ctx)?;
        row.float("char_value", chi.value)
            .uint("char_rounded", chi.rounded as u64)
            .float("char_residual", chi.residual)
    } else {
        row.push("char_value", crate::report::Field::Empty)
            .push("char_rounded", crate::report::Field::Empty)
            .push("char_residual", crate::report::Field::Empty)
    };
    Ok(vec![row])
}

/// Which exponential sum a row describes plus its parameter echo.
pub struct ExpSumRequest {
    pub kind: String,
    pub params: String,
    pub result: ordlab_core::expsum::ExpSumResult,
}

#[allow(clippy::too_many_arguments)]
pub fn expsum_request(
    kind: &str,
    p: Option<u64>,
    q: Option<u64>,
    t: Option<u64>,
    d: Option<u64>,
    a: Option<u64>,
    x: Option<u64>,
    m: Option<u64>,
    w: Option<u64>,
    cutoff: Option<u64>,
    u: Option<&RationalBase>,
) -> Result<ExpSumRequest> {
    let need = |name: &str, v: Option<u64>| {
        v.ok_or_else(|| Error::InvalidInput(format!("{kind} needs --{name}")))
    };
    let ctx = |p: Option<u64>| -> Result<PrimeContext> {
        let p = need("p", p)?;
        match q {
            Some(q) => PrimeContext::with_aux_prime(p, q),
            None => PrimeContext::new(p),
        }
    };
    let (params, result) = match kind {
        "kernel" => {
            let c = ctx(p)?;
            let t = need("t", t)?;
            (
                format!("p={};q={};t={}", c.p(), c.q(), t),
                expsum::kernel_sum(&c, t)?,
            )
        }
        "coprime-kernel" => {
            let c = ctx(p)?;
            let (t, d) = (need("t", t)?, need("d", d)?);
            (
                format!("p={};q={};t={};d={}", c.p(), c.q(), t, d),
                expsum::coprime_kernel_sum(&c, t, d)?,
            )
        }
        "gauss" => {
            let c = ctx(p)?;
            (
                format!("p={};q={}", c.p(), c.q()),
                expsum::gauss_resolvent(&c)?,
            )
        }
        "power-resolvent" => {
            let c = ctx(p)?;
            let d = need("d", d)?;
            (
                format!("p={};q={};d={}", c.p(), c.q(), d),
                expsum::power_resolvent(&c, d)?,
            )
        }
        "weil" => {
            let c = ctx(p)?;
            let (d, a) = (need("d", d)?, need("a", a)?);
            (
                format!("p={};d={};a={}", c.p(), d, a),
                expsum::weil_power_sum(&c, d, a)?,
            )
        }
        "incomplete" => {
            let c = ctx(p)?;
            let (d, a, x) = (need("d", d)?, need("a", a)?, need("x", x)?);
            (
                format!("p={};d={};a={};x={}", c.p(), d, a, x),
                expsum::incomplete_power_sum(&c, d, a, x)?,
            )
        }
        "coprime-power" => {
            let c = ctx(p)?;
            let (d, a) = (need("d", d)?, need("a", a)?);
            (
                format!("p={};d={};a={}", c.p(), d, a),
                expsum::coprime_power_sum(&c, d, a)?,
            )
        }
        "coprime-power-diff" => {
            let c = ctx(p)?;
            let (d, a) = (need("d", d)?, need("a", a)?);
            (
                format!("p={};d={};a={}", c.p(), d, a),
                expsum::coprime_power_sum_diff(&c, d, a)?,
            )
        }
        "periodic" => {
            let (m, w, pc, a) = (
                need("m", m)?,
                need("w", w)?,
                need("P", cutoff)?,
                need("a", a)?,
            );
            let elem = PeriodicElement::new(m, w, pc)?;
            (
                format!("m={};w={};Q={};P={};a={}", m, w, elem.period(), pc, a),
                expsum::periodic_sum(&elem, a)?,
            )
        }
        "coprime-periodic" => {
            let (m, w, pc, a) = (
                need("m", m)?,
                need("w", w)?,
                need("P", cutoff)?,
                need("a", a)?,
            );
            let elem = PeriodicElement::new(m, w, pc)?;
            (
                format!("m={};w={};Q={};P={};a={}", m, w, elem.period(), pc, a),
                expsum::coprime_periodic_sum(&elem, a)?,
            )
        }
        "double" => {
            let c = ctx(p)?;
            let d = need("d", d)?;
            let u = u.ok_or_else(|| Error::InvalidInput("double needs --u".into()))?;
            let spec = OrderSpec::new(*u, d)?;
            (
                format!("p={};u={};d={}", c.p(), u, d),
                expsum::double_sum(&spec, &c)?,
            )
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown sum kind '{other}'; expected kernel, coprime-kernel, gauss, \
                 power-resolvent, weil, incomplete, coprime-power, coprime-power-diff, \
                 periodic, coprime-periodic, or double"
            )))
        }
    };
    Ok(ExpSumRequest {
        kind: kind.to_string(),
        params,
        result,
    })
}

pub fn expsum_rows(req: &ExpSumRequest) -> Vec<Row> {
    vec![Row::new()
        .text("kind", req.kind.clone())
        .text("params", req.params.clone())
        .exp_sum(&req.result)]
}

/// The fixed census schema shared by the CSV and JSON encoders.
pub fn census_rows(report: &CensusReport) -> Vec<Row> {
    vec![Row::new()
        .uint("x", report.query.x())
        .uint("two_x", 2 * report.query.x())
        .uint("k", report.query.specs().len() as u64)
        .text("specs", report.query.specs_string())
        .uint("primes_total", report.prime_count_total)
        .uint("R", report.matching)
        .uint("skipped", report.skipped)
        .float("M", report.main_term)
        .opt_float("e3_abs", report.e3_abs)
        .float("lower_bound", report.analytic_lower_bound)
        .float("ratio", report.ratio)]
}

pub fn census_report(
    x: u64,
    specs: Vec<OrderSpec>,
    b: f64,
    workers: usize,
) -> Result<CensusReport> {
    let query = CensusQuery::new(x, specs, b)?;
    if workers <= 1 {
        count_simultaneous(&query)
    } else {
        census_parallel(&query, workers)
    }
}

pub fn mainterm_rows(x: u64, d: u64, e: u64) -> Result<Vec<Row>> {
    let value = main_term(x, d, e)?;
    Ok(vec![Row::new()
        .uint("x", x)
        .uint("d", d)
        .uint("e", e)
        .uint("lcm", ordlab_core::arith::lcm(d, e))
        .float("main_term", value)])
}

pub fn audit_rows(x: u64, specs: Vec<OrderSpec>, b: f64) -> Result<Vec<Row>> {
    let query = CensusQuery::new(x, specs, b)?;
    let audit = decomposition_audit(&query)?;
    Ok(vec![Row::new()
        .uint("x", audit.x)
        .text("specs", audit.specs.clone())
        .uint("audited", audit.audited)
        .uint("skipped", audit.skipped)
        .uint("R", audit.matching)
        .float("sum_main", audit.sum_main)
        .float("sum_e1", audit.sum_e1)
        .float("sum_e2", audit.sum_e2)
        .float("sum_e3", audit.sum_e3)
        .uint("identity_exact", audit.identity_exact as u64)
        .uint("e1_vanishing_ok", audit.e1_vanishing_ok as u64)
        .uint("e2_vanishing_ok", audit.e2_vanishing_ok as u64)
        .float("e3_abs", audit.e3_abs)
        .float("e3_bound", audit.e3_bound)
        .float("e3_ratio", audit.e3_ratio)])
}

pub fn stats_rows(p: u64, trials: Option<u64>, seed: u64, workers: usize) -> Result<Vec<Row>> {
    let report = match trials {
        None => ordlab_core::stats::equal_order_probability_exact(p)?,
        Some(t) if workers <= 1 => equal_order_probability_sampled(p, t, seed)?,
        Some(t) => sampled_parallel(p, t, seed, workers)?,
    };
    let row = Row::new()
        .uint("p", report.p)
        .push(
            "alpha2_num",
            crate::report::Field::UInt128(report.alpha2_num),
        )
        .push(
            "alpha2_den",
            crate::report::Field::UInt128(report.alpha2_den),
        )
        .float("alpha2", report.alpha2)
        .float("phi_ratio", report.phi_ratio);
    Ok(vec![match report.sampled {
        Some(s) => row
            .uint("trials", s.trials)
            .uint("hits", s.hits)
            .float("estimate", s.estimate)
            .uint("seed", s.seed),
        None => row
            .push("trials", crate::report::Field::Empty)
            .push("hits", crate::report::Field::Empty)
            .push("estimate", crate::report::Field::Empty)
            .uint("seed", seed),
    }])
}

pub fn avg_order_rows(x: u64, u: &RationalBase) -> Result<Vec<Row>> {
    let t = avg_order(x, u)?;
    Ok(vec![Row::new()
        .uint("x", x)
        .text("u", u.to_string())
        .float("t_avg", t)])
}

pub fn totient_avg_rows(x: u64, q: u64, a: u64, indices: &[u64]) -> Result<Vec<Row>> {
    let report = totient_product_avg(x, q, a, indices)?;
    let ds: Vec<String> = report.indices.iter().map(|d| d.to_string()).collect();
    Ok(vec![Row::new()
        .uint("x", report.x)
        .uint("q", report.q)
        .uint("a", report.a)
        .text("indices", ds.join(";"))
        .uint("primes_in_progression", report.primes_in_progression)
        .uint("used", report.used)
        .float("S", report.s_sum)
        .float("A_hat", report.a_hat)])
}
