//! Fitted model constants embedded as a versioned data set.
//!
//! Every constant is stored as the literal decimal string it was transcribed
//! with and parsed to f64 once at first access. The dump format re-emits the
//! stored strings verbatim (trailing zeros included), so a dump can be
//! compared character-for-character against the source tables. Basic sanity
//! invariants (positive variances over the fitted cluster range, correct
//! signs on the decay coefficients) are checked when the set is loaded.

use std::sync::LazyLock;

use serde::Serialize;
use serde_json::value::RawValue;

/// Version of the embedded constant set.
pub const TABLES_VERSION: u32 = 1;

/// Largest cluster index covered by the tabulated other-path magnitude rows.
pub const OTHER_PATH_MAX_CLUSTER: u32 = 20;

/// Cluster range over which the variance curves are checked at load.
pub const FITTED_CLUSTER_RANGE: std::ops::RangeInclusive<u32> = 1..=20;

/// Power curve `coeff * k^exponent + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerCurve {
    pub coeff: f64,
    pub exponent: f64,
    pub offset: f64,
}

impl PowerCurve {
    pub fn eval(&self, k: f64) -> f64 {
        self.coeff * k.powf(self.exponent) + self.offset
    }
}

/// Linear curve `slope * k + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCurve {
    pub slope: f64,
    pub intercept: f64,
}

impl LinearCurve {
    pub fn eval(&self, k: f64) -> f64 {
        self.slope * k + self.intercept
    }
}

/// Either curve family, evaluated on the cluster index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    Power(PowerCurve),
    Linear(LinearCurve),
}

impl Curve {
    pub fn eval(&self, k: f64) -> f64 {
        match self {
            Curve::Power(c) => c.eval(k),
            Curve::Linear(c) => c.eval(k),
        }
    }
}

/// Double exponential `amp1 * e^(rate1 * x) + amp2 * e^(rate2 * x)`.
///
/// Both amplitudes are positive and both rates negative for every embedded
/// row, which makes the curve strictly positive and strictly decreasing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleExp {
    pub amp1: f64,
    pub rate1: f64,
    pub amp2: f64,
    pub rate2: f64,
}

impl DoubleExp {
    pub fn eval(&self, x: f64) -> f64 {
        self.amp1 * (self.rate1 * x).exp() + self.amp2 * (self.rate2 * x).exp()
    }
}

/// Mean and variance curves of the per-class path-count model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathCountCurves {
    pub mean: PowerCurve,
    pub variance: PowerCurve,
}

/// Per-class curves generating the three GEV parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GevCurves {
    pub shape: Curve,
    pub scale: Curve,
    pub location: Curve,
}

/// The full embedded constant set.
#[derive(Debug)]
pub struct ParameterTables {
    path_count: [PathCountCurves; 4], // classes 2..=5
    first_arrival: [DoubleExp; 5],    // classes 1..=5
    other_path: [DoubleExp; 20],      // clusters 1..=20
    gev: [GevCurves; 4],              // classes 2..=5
}

impl ParameterTables {
    pub fn get() -> &'static ParameterTables {
        &TABLES
    }

    /// Path-count curves for classes 2..=5.
    pub fn path_count(&self, class: u8) -> Option<&PathCountCurves> {
        match class {
            2..=5 => Some(&self.path_count[class as usize - 2]),
            _ => None,
        }
    }

    /// First-arrival magnitude curve for classes 1..=5.
    pub fn first_arrival(&self, class: u8) -> Option<&DoubleExp> {
        match class {
            1..=5 => Some(&self.first_arrival[class as usize - 1]),
            _ => None,
        }
    }

    /// Other-path magnitude curve for clusters 1..=20.
    pub fn other_path(&self, cluster: u32) -> Option<&DoubleExp> {
        if (1..=OTHER_PATH_MAX_CLUSTER).contains(&cluster) {
            Some(&self.other_path[cluster as usize - 1])
        } else {
            None
        }
    }

    /// GEV parameter curves for classes 2..=5.
    pub fn gev(&self, class: u8) -> Option<&GevCurves> {
        match class {
            2..=5 => Some(&self.gev[class as usize - 2]),
            _ => None,
        }
    }
}

// --------------------------------------------------------------------------
// Raw transcriptions.
// --------------------------------------------------------------------------

struct PathCountRaw {
    class: u8,
    mean: [&'static str; 3],     // p1, p2, p3
    variance: [&'static str; 3], // q1, q2, q3
}

const PATH_COUNT_RAW: [PathCountRaw; 4] = [
    PathCountRaw {
        class: 2,
        mean: ["1.623", "0.08596", "0"],
        variance: ["-0.3818", "-0.8461", "1.592"],
    },
    PathCountRaw {
        class: 3,
        mean: ["3.913", "0.0968", "0"],
        variance: ["-0.005983", "1.033", "1.783"],
    },
    PathCountRaw {
        class: 4,
        mean: ["6.169", "0.09686", "0"],
        variance: ["-0.4401", "-0.6989", "2.007"],
    },
    PathCountRaw {
        class: 5,
        mean: ["8.684", "0.1688", "0"],
        variance: ["-8.725", "-0.06764", "10.98"],
    },
];

struct DoubleExpRaw {
    index: u32,
    coeffs: [&'static str; 4], // a, b, c, d
}

#[rustfmt::skip]
const FIRST_ARRIVAL_RAW: [DoubleExpRaw; 5] = [
    DoubleExpRaw { index: 1, coeffs: ["0.4815", "-0.0821", "0.4103", "-0.02408"] },
    DoubleExpRaw { index: 2, coeffs: ["0.2601", "-0.1214", "0.4948", "-0.03241"] },
    DoubleExpRaw { index: 3, coeffs: ["0.1841", "-0.1246", "0.3628", "-0.03334"] },
    DoubleExpRaw { index: 4, coeffs: ["0.1221", "-0.1515", "0.2736", "-0.03445"] },
    DoubleExpRaw { index: 5, coeffs: ["0.1721", "-0.1517", "0.0905", "-0.01979"] },
];

#[rustfmt::skip]
const OTHER_PATH_RAW: [DoubleExpRaw; 20] = [
    DoubleExpRaw { index: 1, coeffs: ["0.4194", "-0.1270", "0.0328", "-0.0083"] },
    DoubleExpRaw { index: 2, coeffs: ["0.4388", "-0.1355", "0.0487", "-0.0207"] },
    DoubleExpRaw { index: 3, coeffs: ["0.4647", "-0.1353", "0.0502", "-0.0206"] },
    DoubleExpRaw { index: 4, coeffs: ["0.4542", "-0.1329", "0.0562", "-0.0235"] },
    DoubleExpRaw { index: 5, coeffs: ["0.4381", "-0.1244", "0.0521", "-0.0229"] },
    DoubleExpRaw { index: 6, coeffs: ["0.4632", "-0.1253", "0.0571", "-0.0249"] },
    DoubleExpRaw { index: 7, coeffs: ["0.4677", "-0.1163", "0.0422", "-0.0196"] },
    DoubleExpRaw { index: 8, coeffs: ["0.5124", "-0.1200", "0.0457", "-0.0213"] },
    DoubleExpRaw { index: 9, coeffs: ["0.4262", "-0.1032", "0.0327", "-0.0171"] },
    DoubleExpRaw { index: 10, coeffs: ["0.4419", "-0.1004", "0.0287", "-0.0151"] },
    DoubleExpRaw { index: 11, coeffs: ["0.5116", "-0.1046", "0.0292", "-0.0149"] },
    DoubleExpRaw { index: 12, coeffs: ["0.4604", "-0.0964", "0.0257", "-0.0140"] },
    DoubleExpRaw { index: 13, coeffs: ["0.4501", "-0.0925", "0.0223", "-0.0126"] },
    DoubleExpRaw { index: 14, coeffs: ["0.4968", "-0.0946", "0.0238", "-0.0134"] },
    DoubleExpRaw { index: 15, coeffs: ["0.5187", "-0.0950", "0.0243", "-0.0136"] },
    DoubleExpRaw { index: 16, coeffs: ["0.5242", "-0.0915", "0.0207", "-0.0116"] },
    DoubleExpRaw { index: 17, coeffs: ["0.5355", "-0.0896", "0.0188", "-0.0109"] },
    DoubleExpRaw { index: 18, coeffs: ["0.6164", "-0.0934", "0.0224", "-0.0125"] },
    DoubleExpRaw { index: 19, coeffs: ["0.5288", "-0.0852", "0.0180", "-0.0108"] },
    DoubleExpRaw { index: 20, coeffs: ["0.5829", "-0.0864", "0.0175", "-0.0099"] },
];

enum CurveRaw {
    Power([&'static str; 3]),  // coeff, exponent, offset
    Linear([&'static str; 2]), // slope, intercept
}

struct GevRaw {
    class: u8,
    shape: CurveRaw,
    scale: CurveRaw,
    location: CurveRaw,
}

const GEV_RAW: [GevRaw; 4] = [
    GevRaw {
        class: 2,
        shape: CurveRaw::Linear(["0.001143", "2.211"]),
        scale: CurveRaw::Linear(["0.0008684", "0.6979"]),
        location: CurveRaw::Linear(["-0.00003362", "0.5586"]),
    },
    GevRaw {
        class: 3,
        shape: CurveRaw::Linear(["0.0006167", "2.537"]),
        scale: CurveRaw::Linear(["0.0005993", "0.8095"]),
        location: CurveRaw::Linear(["-0.00009132", "0.571"]),
    },
    GevRaw {
        class: 4,
        shape: CurveRaw::Linear(["0.000972", "2.734"]),
        scale: CurveRaw::Linear(["0.0009786", "0.9539"]),
        location: CurveRaw::Linear(["0.0001653", "0.3061"]),
    },
    GevRaw {
        class: 5,
        shape: CurveRaw::Power(["0.4063", "0.2886", "1.061"]),
        scale: CurveRaw::Power(["1.246", "0.1702", "-1.892"]),
        location: CurveRaw::Linear(["0.0002687", "0.2033"]),
    },
];

// --------------------------------------------------------------------------
// Loading.
// --------------------------------------------------------------------------

fn num(s: &str) -> f64 {
    s.parse()
        .unwrap_or_else(|_| panic!("embedded table constant {s:?} is not a valid f64"))
}

fn parse_power(c: &[&str; 3]) -> PowerCurve {
    PowerCurve {
        coeff: num(c[0]),
        exponent: num(c[1]),
        offset: num(c[2]),
    }
}

fn parse_curve(c: &CurveRaw) -> Curve {
    match c {
        CurveRaw::Power(v) => Curve::Power(parse_power(v)),
        CurveRaw::Linear(v) => Curve::Linear(LinearCurve {
            slope: num(v[0]),
            intercept: num(v[1]),
        }),
    }
}

fn parse_double_exp(c: &[&str; 4]) -> DoubleExp {
    DoubleExp {
        amp1: num(c[0]),
        rate1: num(c[1]),
        amp2: num(c[2]),
        rate2: num(c[3]),
    }
}

fn check_decay_row(what: &str, index: u32, d: &DoubleExp) {
    assert!(
        d.amp1 > 0.0 && d.amp2 > 0.0 && d.rate1 < 0.0 && d.rate2 < 0.0,
        "{what} row {index} violates the sign constraints (amplitudes positive, rates negative)"
    );
}

static TABLES: LazyLock<ParameterTables> = LazyLock::new(|| {
    let path_count = PATH_COUNT_RAW.each_ref().map(|r| PathCountCurves {
        mean: parse_power(&r.mean),
        variance: parse_power(&r.variance),
    });
    for (row, raw) in path_count.iter().zip(&PATH_COUNT_RAW) {
        for k in FITTED_CLUSTER_RANGE {
            let v = row.variance.eval(f64::from(k));
            assert!(
                v > 0.0,
                "path-count variance for class {} is {v} at cluster {k}",
                raw.class
            );
        }
    }

    let first_arrival = FIRST_ARRIVAL_RAW
        .each_ref()
        .map(|r| parse_double_exp(&r.coeffs));
    for (row, raw) in first_arrival.iter().zip(&FIRST_ARRIVAL_RAW) {
        check_decay_row("first-arrival magnitude", raw.index, row);
    }

    let other_path = OTHER_PATH_RAW
        .each_ref()
        .map(|r| parse_double_exp(&r.coeffs));
    for (row, raw) in other_path.iter().zip(&OTHER_PATH_RAW) {
        check_decay_row("other-path magnitude", raw.index, row);
    }

    let gev = GEV_RAW.each_ref().map(|r| GevCurves {
        shape: parse_curve(&r.shape),
        scale: parse_curve(&r.scale),
        location: parse_curve(&r.location),
    });

    ParameterTables {
        path_count,
        first_arrival,
        other_path,
        gev,
    }
});

// --------------------------------------------------------------------------
// Dump format.
// --------------------------------------------------------------------------

fn raw_num(s: &str) -> Box<RawValue> {
    RawValue::from_string(s.to_owned()).expect("embedded table constant is a valid JSON number")
}

#[derive(Serialize)]
struct PathCountDump {
    class: u8,
    p1: Box<RawValue>,
    p2: Box<RawValue>,
    p3: Box<RawValue>,
    q1: Box<RawValue>,
    q2: Box<RawValue>,
    q3: Box<RawValue>,
}

#[derive(Serialize)]
struct FirstArrivalDump {
    class: u32,
    #[serde(rename = "aM")]
    a_m: Box<RawValue>,
    #[serde(rename = "bM")]
    b_m: Box<RawValue>,
    #[serde(rename = "cM")]
    c_m: Box<RawValue>,
    #[serde(rename = "dM")]
    d_m: Box<RawValue>,
}

#[derive(Serialize)]
struct OtherPathDump {
    cluster: u32,
    ao: Box<RawValue>,
    bo: Box<RawValue>,
    co: Box<RawValue>,
    #[serde(rename = "do")]
    d_o: Box<RawValue>,
}

#[derive(Serialize)]
struct CurveDump {
    form: &'static str,
    a: Box<RawValue>,
    b: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<Box<RawValue>>,
}

#[derive(Serialize)]
struct GevDump {
    class: u8,
    xi: CurveDump,
    eta: CurveDump,
    eps: CurveDump,
}

#[derive(Serialize)]
struct DumpDoc {
    version: u32,
    path_count: Vec<PathCountDump>,
    first_arrival: Vec<FirstArrivalDump>,
    other_path: Vec<OtherPathDump>,
    gev: Vec<GevDump>,
}

fn curve_dump(c: &CurveRaw) -> CurveDump {
    match c {
        CurveRaw::Power(v) => CurveDump {
            form: "power",
            a: raw_num(v[0]),
            b: raw_num(v[1]),
            c: Some(raw_num(v[2])),
        },
        CurveRaw::Linear(v) => CurveDump {
            form: "linear",
            a: raw_num(v[0]),
            b: raw_num(v[1]),
            c: None,
        },
    }
}

/// Render the embedded constant set as a JSON document.
///
/// Constants appear exactly as stored (string-level), so the output is
/// stable across versions of the float formatter.
pub fn dump_json() -> String {
    let doc = DumpDoc {
        version: TABLES_VERSION,
        path_count: PATH_COUNT_RAW
            .iter()
            .map(|r| PathCountDump {
                class: r.class,
                p1: raw_num(r.mean[0]),
                p2: raw_num(r.mean[1]),
                p3: raw_num(r.mean[2]),
                q1: raw_num(r.variance[0]),
                q2: raw_num(r.variance[1]),
                q3: raw_num(r.variance[2]),
            })
            .collect(),
        first_arrival: FIRST_ARRIVAL_RAW
            .iter()
            .map(|r| FirstArrivalDump {
                class: r.index,
                a_m: raw_num(r.coeffs[0]),
                b_m: raw_num(r.coeffs[1]),
                c_m: raw_num(r.coeffs[2]),
                d_m: raw_num(r.coeffs[3]),
            })
            .collect(),
        other_path: OTHER_PATH_RAW
            .iter()
            .map(|r| OtherPathDump {
                cluster: r.index,
                ao: raw_num(r.coeffs[0]),
                bo: raw_num(r.coeffs[1]),
                co: raw_num(r.coeffs[2]),
                d_o: raw_num(r.coeffs[3]),
            })
            .collect(),
        gev: GEV_RAW
            .iter()
            .map(|r| GevDump {
                class: r.class,
                xi: curve_dump(&r.shape),
                eta: curve_dump(&r.scale),
                eps: curve_dump(&r.location),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("dump document serializes")
}
