//! The 31-objective benchmark: fifteen 2-D functions, Lennard-Jones clusters
//! of 3 to 10 particles and Rastrigin in 3 to 10 dimensions.
//!
//! Targets for Eggholder, McCormick and Schaffer N.4 are the refined optima,
//! not the 4-6 digit rounded prints, so a 1e-6 success tolerance is
//! attainable. The same holds for the Lennard-Jones energies.

pub mod functions;
pub mod lj;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::problem::{BoxDomain, ObjectiveSpec};

pub use lj::{lj_energy, lj_gradient};

/// Names of the fifteen 2-D functions, in benchmark order.
pub const TWO_D: [&str; 15] = [
    "ackley",
    "beale",
    "booth",
    "easom",
    "eggholder",
    "goldstein_price",
    "levy13",
    "matyas",
    "mccormick",
    "rastrigin2d",
    "rosenbrock2d",
    "schaffer2",
    "schaffer4",
    "sphere",
    "three_hump_camel",
];

/// Refined minimum energies for m = 3..=10.
pub const LJ_MINIMA: [f64; 8] = [
    -3.0,
    -6.0,
    -9.103_852_415_707_56,
    -12.712_062_256_809_34,
    -16.505_384_168_012_22,
    -19.821_489_192_154_77,
    -24.113_360_433_647_18,
    -28.422_531_893_437_56,
];

// One representative minimum-energy geometry per cluster size, centred at
// the origin.
const LJ5: [f64; 15] = [
    0.881064928250227,
    -0.0568197932611588,
    0.232277634915345,
    0.0977088882579535,
    -0.430321809730484,
    -0.475890289370958,
    -0.16932272108269,
    -0.204112615319864,
    0.592337159625653,
    -0.88106492826021,
    0.0568197932678915,
    -0.232277634917739,
    0.0716138328347197,
    0.634434425043615,
    -0.1164468702523,
];
const LJ6: [f64; 18] = [
    0.45113925671378,
    -0.638434223284855,
    -0.114968930247791,
    0.431971474445377,
    0.400132005555638,
    -0.526913436226049,
    -0.431971476765977,
    -0.400132004725394,
    0.526913434256439,
    0.483959460707529,
    0.237989210391135,
    0.577483436100077,
    -0.483959458700025,
    -0.237989210320613,
    -0.577483437263787,
    -0.451139256400684,
    0.638434222384089,
    0.114968933381111,
];
const LJ7: [f64; 21] = [
    -0.818233215053901,
    0.123007134773246,
    -0.479264183738961,
    -0.0194907024182551,
    -0.63097628252217,
    -0.718205784977544,
    -0.257870540851828,
    -0.381655300239567,
    0.342299555762987,
    -0.486205234684907,
    0.706998872009009,
    0.422004230585522,
    0.517741853008249,
    0.313942196065864,
    0.74007714019182,
    0.806187297558793,
    -0.512971922983005,
    0.0353885961918958,
    0.25787054244185,
    0.381655302896623,
    -0.342299554015719,
];
const LJ8: [f64; 24] = [
    0.334325827556238,
    0.477766449855131,
    0.824915494567243,
    0.333706725316601,
    0.223804907955529,
    -0.257247459964625,
    0.906725831009602,
    -0.416243862185006,
    0.450505526491609,
    -0.629313445152691,
    -0.283757020402958,
    -0.515699590570022,
    -0.61562316093941,
    0.556162791435368,
    0.232788741996942,
    -0.436069940310128,
    0.765468556462963,
    -0.850998279056042,
    -0.205944092889869,
    -0.443040725544715,
    0.500927143317464,
    0.312192255409658,
    -0.880161097576311,
    -0.38519157678257,
];
const LJ9: [f64; 27] = [
    0.609840882375848,
    -0.844172078120767,
    0.462747142803392,
    -0.991296923701325,
    0.548017226513597,
    -0.125199243136709,
    -0.019021614189387,
    0.862125595206108,
    0.351751050746239,
    -0.789892833989705,
    -0.39165697223442,
    -0.722039778443386,
    0.408436810302566,
    0.0955021239179361,
    1.05958767126758,
    0.303247469242754,
    -0.641458314875047,
    -0.603260610330634,
    -0.27134110545543,
    -0.210663813825314,
    0.240107932556225,
    0.784071658032685,
    0.158910162495005,
    0.0143948904499565,
    -0.0340443426180058,
    0.423396070922901,
    -0.678089055912665,
];
const LJ10: [f64; 30] = [
    1.08198029671209,
    0.252950092625562,
    -0.385380500863994,
    -0.750753653082472,
    0.182898125295825,
    -0.88662307020121,
    -0.198407678108016,
    -0.343963005218119,
    0.773525214943988,
    -0.263847963467721,
    0.759157011622237,
    0.858631542024821,
    0.587244708193811,
    -0.639470748523035,
    0.047309952763862,
    -1.0180575772181,
    0.188020289141575,
    0.221944498268109,
    0.278537637146957,
    -0.299668584607232,
    -0.976559134733213,
    0.747631356031359,
    0.255509614197463,
    0.704850632695662,
    -0.482647963904947,
    -0.680364893267933,
    -0.245299760623344,
    0.0183208376970344,
    0.324932098733656,
    -0.112399374274681,
];

fn lj_geometry(m: usize) -> Vec<f64> {
    match m {
        3 => lj::triangle(),
        4 => lj::tetrahedron(),
        5 => LJ5.to_vec(),
        6 => LJ6.to_vec(),
        7 => LJ7.to_vec(),
        8 => LJ8.to_vec(),
        9 => LJ9.to_vec(),
        10 => LJ10.to_vec(),
        _ => unreachable!("cluster sizes are 3..=10"),
    }
}

fn square(lo: f64, hi: f64) -> BoxDomain {
    BoxDomain::cube(lo, hi, 2).expect("static domain")
}

fn two_d(
    name: &str,
    domain: BoxDomain,
    f: fn(&[f64]) -> f64,
    g: fn(&[f64]) -> Vec<f64>,
    value: f64,
    position: [f64; 2],
) -> ObjectiveSpec {
    ObjectiveSpec::new(name, domain, f)
        .with_gradient(g)
        .with_known_min(value, Some(position.to_vec()))
}

fn build() -> Vec<ObjectiveSpec> {
    use functions::*;
    let mc_x = (1.0 - 2.0 * PI / 3.0) / 2.0;
    let mut specs = vec![
        two_d(
            "ackley",
            square(-5.0, 5.0),
            ackley,
            ackley_grad,
            0.0,
            [0.0, 0.0],
        ),
        two_d(
            "beale",
            square(-4.5, 4.5),
            beale,
            beale_grad,
            0.0,
            [3.0, 0.5],
        ),
        two_d(
            "booth",
            square(-10.0, 10.0),
            booth,
            booth_grad,
            0.0,
            [1.0, 3.0],
        ),
        two_d(
            "easom",
            square(-100.0, 100.0),
            easom,
            easom_grad,
            -1.0,
            [PI, PI],
        ),
        two_d(
            "eggholder",
            square(-512.0, 512.0),
            eggholder,
            eggholder_grad,
            -959.640_662_720_850_7,
            [512.0, 404.231_804_993_864_6],
        ),
        two_d(
            "goldstein_price",
            square(-2.0, 2.0),
            goldstein_price,
            goldstein_price_grad,
            3.0,
            [0.0, -1.0],
        ),
        two_d(
            "levy13",
            square(-10.0, 10.0),
            levy13,
            levy13_grad,
            0.0,
            [1.0, 1.0],
        ),
        two_d(
            "matyas",
            square(-10.0, 10.0),
            matyas,
            matyas_grad,
            0.0,
            [0.0, 0.0],
        ),
        two_d(
            "mccormick",
            BoxDomain::new(vec![-1.5, -3.0], vec![4.0, 4.0]).expect("static domain"),
            mccormick,
            mccormick_grad,
            -(3f64.sqrt() / 2.0 + PI / 3.0),
            [mc_x, mc_x - 1.0],
        ),
        two_d(
            "rastrigin2d",
            square(-5.12, 5.12),
            rastrigin,
            rastrigin_grad,
            0.0,
            [0.0, 0.0],
        ),
        two_d(
            "rosenbrock2d",
            square(-5.0, 10.0),
            rosenbrock,
            rosenbrock_grad,
            0.0,
            [1.0, 1.0],
        ),
        two_d(
            "schaffer2",
            square(-100.0, 100.0),
            schaffer2,
            schaffer2_grad,
            0.0,
            [0.0, 0.0],
        ),
        two_d(
            "schaffer4",
            square(-100.0, 100.0),
            schaffer4,
            schaffer4_grad,
            0.292_578_632_035_980_6,
            [0.0, 1.253_131_833_684_197],
        ),
        two_d(
            "sphere",
            square(-100.0, 100.0),
            sphere,
            sphere_grad,
            0.0,
            [0.0, 0.0],
        ),
        two_d(
            "three_hump_camel",
            square(-5.0, 5.0),
            three_hump_camel,
            three_hump_camel_grad,
            0.0,
            [0.0, 0.0],
        ),
    ];
    for m in 3..=10 {
        specs.push(
            ObjectiveSpec::new(
                format!("lj{m}"),
                BoxDomain::cube(-1.1, 1.1, 3 * m).expect("static domain"),
                lj::lj_energy,
            )
            .with_gradient(|x| lj::lj_gradient(x).unwrap_or_else(|| vec![f64::NAN; x.len()]))
            .with_known_min(LJ_MINIMA[m - 3], Some(lj_geometry(m))),
        );
    }
    for d in 3..=10 {
        specs.push(
            ObjectiveSpec::new(
                format!("rastrigin{d}"),
                BoxDomain::cube(-5.12, 5.12, d).expect("static domain"),
                functions::rastrigin,
            )
            .with_gradient(functions::rastrigin_grad)
            .with_known_min(0.0, Some(vec![0.0; d])),
        );
    }
    specs
}

/// Immutable name-indexed collection of benchmark objectives.
pub struct Registry {
    specs: Vec<ObjectiveSpec>,
    index: BTreeMap<String, usize>,
}

static STANDARD: LazyLock<Registry> = LazyLock::new(|| Registry::from_specs(build()));

/// The standard 31-function benchmark.
pub fn registry() -> &'static Registry {
    &STANDARD
}

/// One row of the machine-readable manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub dimension: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub target: f64,
    pub tolerance: f64,
    pub has_gradient: bool,
}

impl Registry {
    pub fn from_specs(specs: Vec<ObjectiveSpec>) -> Self {
        let index = specs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name().to_string(), i))
            .collect();
        Self { specs, index }
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ObjectiveSpec> {
        self.specs.iter()
    }

    pub fn names(&self) -> Vec<&str> {
        self.specs.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&ObjectiveSpec, Error> {
        self.index
            .get(name)
            .map(|&i| &self.specs[i])
            .ok_or_else(|| Error::UnknownFunction(name.to_string()))
    }

    /// Checked evaluation of a named objective.
    pub fn evaluate(&self, name: &str, x: &[f64]) -> Result<f64, Error> {
        let spec = self.get(name)?;
        if !spec.domain().contains(x) {
            return Err(crate::error::EvalError::OutOfDomain.into());
        }
        Ok(spec.evaluate(x))
    }

    /// Target value and representative optimum position.
    pub fn known_minimum(&self, name: &str) -> Result<(f64, Option<Vec<f64>>), Error> {
        let spec = self.get(name)?;
        Ok((
            spec.known_min_value(),
            spec.known_min_position().map(<[f64]>::to_vec),
        ))
    }

    /// Resolves `all`, `2d`, `lj`, `rastrigin`, or a comma-separated list of
    /// names. Group names may be mixed into a list.
    pub fn select(&self, selector: &str) -> Result<Vec<String>, Error> {
        let mut out: Vec<String> = Vec::new();
        for token in selector.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let group: Vec<String> = match token {
                "all" => self.names().into_iter().map(String::from).collect(),
                "2d" => TWO_D.iter().map(|s| s.to_string()).collect(),
                "lj" => (3..=10).map(|m| format!("lj{m}")).collect(),
                "rastrigin" => (3..=10).map(|d| format!("rastrigin{d}")).collect(),
                name => {
                    self.get(name)?;
                    vec![name.to_string()]
                }
            };
            for name in group {
                if !out.contains(&name) {
                    out.push(name);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidConfig("empty function selection".into()));
        }
        Ok(out)
    }

    pub fn manifest(&self) -> Vec<ManifestEntry> {
        self.specs
            .iter()
            .map(|s| ManifestEntry {
                name: s.name().to_string(),
                dimension: s.dimension(),
                lower: s.domain().lower().to_vec(),
                upper: s.domain().upper().to_vec(),
                target: s.known_min_value(),
                tolerance: s.tolerance(),
                has_gradient: s.has_gradient(),
            })
            .collect()
    }

    pub fn manifest_json(&self) -> String {
        serde_json::to_string_pretty(&self.manifest()).expect("manifest serializes")
    }
}
