use super::{CommandSpec, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::{RunOutput, Table};
use crate::schema::{int, Kind, Param};
use nipoly::lattice::Point;
use nipoly::szego::{log_coefficients, many_paths_rate, symbol_from_geometry, winding_number, Symbol};
use serde_json::json;

/// `m:d` pairs, e.g. `-1:5,0:10,1:1`.
fn parse_symbol(raw: &str) -> CliResult<Symbol> {
    let pairs = raw
        .split(',')
        .map(|pair| {
            let (m, d) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Schema(format!("symbol: expected m:d pairs, got {pair:?}")))?;
            let m: i64 = m.trim().parse().map_err(|_| CliError::Schema(format!("symbol: bad index {m:?}")))?;
            let d: f64 = d.trim().parse().map_err(|_| CliError::Schema(format!("symbol: bad coefficient {d:?}")))?;
            if !d.is_finite() {
                return Err(CliError::Schema(format!("symbol: coefficient {d} is not finite")));
            }
            Ok((m, d))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Symbol::new(pairs))
}

fn szego(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let sym = match (p.text("symbol"), p.text("z"), p.text("h")) {
        (Some(s), None, None) => parse_symbol(s)?,
        (None, Some(z), Some(h)) => {
            let z = ints_pair("z", z)?;
            let h = ints_pair("h", h)?;
            if !(h.0 < 0 && h.1 > 0) {
                return Err(CliError::Schema(format!("h: need h1 < 0 < h2, got {},{}", h.0, h.1)));
            }
            if z.0 < 0 || z.1 < 0 {
                return Err(CliError::Schema("z: coordinates must be non-negative".into()));
            }
            symbol_from_geometry(Point::new(z.0, z.1), h)?
        }
        _ => {
            return Err(CliError::Schema(
                "give either --symbol, or both --z and --h".into(),
            ))
        }
    };
    let winding = winding_number(&sym)?;
    let kmax = p.usize("kmax");
    let report = many_paths_rate(&sym, kmax)?;
    let c = log_coefficients(&sym, 1)?;
    let mut table = Table::new("", &["k", "log_D_k[nats]", "log_D_k_over_k[nats]", "D_k_exp_minus_k_c0"]);
    for r in &report.rows {
        table.push(vec![r.k.into(), r.log_det.into(), r.rate.into(), r.normalized.into()]);
    }
    let coeffs: serde_json::Map<String, serde_json::Value> =
        sym.coeffs().iter().map(|(m, d)| (m.to_string(), json!(d))).collect();
    Ok(RunOutput {
        tables: vec![table],
        results: json!({
            "symbol": coeffs,
            "winding_number": winding,
            "c0": report.c0,
            "c1": c.get(1),
            "c_minus1": c.get(-1),
            "szego_constant": report.szego_constant,
            "single_path_ceiling": report.ceiling,
        }),
    })
}

fn ints_pair(name: &str, raw: &str) -> CliResult<(i64, i64)> {
    let v: Vec<i64> = raw
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Schema(format!("{name}: expected two integers, got {raw:?}"))))
        .collect::<CliResult<_>>()?;
    match v[..] {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::Schema(format!("{name}: expected two integers, got {raw:?}"))),
    }
}

pub static SZEGO: CommandSpec = CommandSpec {
    path: &["szego"],
    about: "Toeplitz determinants of a Laurent symbol and their Szegő asymptotics",
    params: &[
        Param {
            name: "z",
            kind: Kind::Text,
            default: None,
            help: "displacement z1,z2 of the stacked geometry",
        },
        Param {
            name: "h",
            kind: Kind::Text,
            default: None,
            help: "stacking direction h1,h2 with h1 < 0 < h2",
        },
        Param {
            name: "symbol",
            kind: Kind::Text,
            default: None,
            help: "explicit symbol as m:d pairs, e.g. -1:5,0:10,1:1",
        },
        int("kmax", 1, 2000, Some("40"), "largest determinant size"),
    ],
    replicas: None,
    run: szego,
};
