//! JSON run configurations.
//!
//! ```json
//! {
//!   "field": {"m": 2},
//!   "lattice": {"n": 3},
//!   "pairing": {"P": [["1","0"],["0","1"],["0","0+1s"]]},
//!   "module": {"kind": "wedge", "k": 1},
//!   "sigma": ["1/3", "1/7"],
//!   "a0": [0, 0, 1],
//!   "G0": [[1, 0, 0], [0, 1, 0]],
//!   "windows": {"box": 2, "opbox": 1, "partwin": 2, "raisewin": 2},
//!   "seed": 7
//! }
//! ```
//!
//! Every problem is reported with the JSON pointer of the offending value.

use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{is_square_free, Scalar};
use crate::lattice::{GroupElem, Pairing, Splitting};
use crate::linalg::Mat;
use crate::lmod::{make_frame, sl_adjoint, vc_module, wedge_module, LModule};
use crate::spanprobe::Window;
use crate::tensor::ModuleDesc;

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSpec {
    Wedge(usize),
    Vc(Scalar),
    Adjoint,
    Gl(Vec<Mat>),
    Direct(Vec<Mat>),
}

impl ModuleSpec {
    /// Short form used on the command line: `wedge:K`, `vc:C`, `adjoint`.
    pub fn parse_flag(text: &str, m: u64) -> Result<ModuleSpec> {
        let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
        match kind {
            "wedge" => arg
                .parse()
                .map(ModuleSpec::Wedge)
                .map_err(|_| Error::config("--module", format!("bad wedge degree {arg:?}"))),
            "vc" => Ok(ModuleSpec::Vc(Scalar::parse(arg, m)?)),
            "adjoint" if arg.is_empty() => Ok(ModuleSpec::Adjoint),
            _ => Err(Error::config("--module", format!("unknown module {text:?}; expected wedge:K, vc:C or adjoint"))),
        }
    }

    pub fn build(&self, p: &Pairing) -> Result<LModule> {
        let rbar = p.rank();
        match self {
            ModuleSpec::Wedge(k) => wedge_module(rbar, *k),
            ModuleSpec::Vc(c) => Ok(vc_module(c.clone())),
            ModuleSpec::Adjoint => sl_adjoint(rbar),
            ModuleSpec::Gl(ms) => LModule::gl(rbar, ms.clone()),
            ModuleSpec::Direct(ms) => LModule::direct(p, ms.clone()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModuleSpec::Wedge(k) => format!("wedge:{k}"),
            ModuleSpec::Vc(c) => format!("vc:{c}"),
            ModuleSpec::Adjoint => "adjoint".into(),
            ModuleSpec::Gl(ms) => format!("gl[{}]", ms.first().map_or(0, |m| m.rows())),
            ModuleSpec::Direct(ms) => format!("direct[{}]", ms.first().map_or(0, |m| m.rows())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Windows {
    pub box_radius: i64,
    pub opbox: i64,
    pub partwin: i64,
    pub raisewin: i64,
}

impl Default for Windows {
    fn default() -> Self {
        Windows { box_radius: 2, opbox: 1, partwin: 2, raisewin: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub m: u64,
    pub n: usize,
    pub pairing: Pairing,
    pub module: ModuleSpec,
    pub sigma: Vec<Scalar>,
    pub a0: Option<GroupElem>,
    pub g0: Option<Vec<GroupElem>>,
    pub windows: Windows,
    pub seed: u64,
}

impl Config {
    pub fn load(path: &std::path::Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Config::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Config> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::config("", format!("invalid JSON: {e}")))?;
        let root = v.as_object().ok_or_else(|| Error::config("", "expected an object"))?;
        for key in root.keys() {
            if !["field", "lattice", "pairing", "module", "sigma", "a0", "G0", "windows", "seed"].contains(&key.as_str()) {
                return Err(Error::config(format!("/{key}"), "unknown key"));
            }
        }

        let m = uint(&v, "/field/m")?;
        if !is_square_free(m) {
            return Err(Error::config("/field/m", format!("{m} is not square-free")));
        }
        let n = uint(&v, "/lattice/n")? as usize;
        if n == 0 {
            return Err(Error::config("/lattice/n", "must be positive"));
        }

        let rows = array(&v, "/pairing/P")?;
        if rows.len() != n {
            return Err(Error::config("/pairing/P", format!("expected {n} rows, got {}", rows.len())));
        }
        let mut p = Vec::with_capacity(n);
        let mut r = None;
        for (i, _) in rows.iter().enumerate() {
            let ptr = format!("/pairing/P/{i}");
            let row = scalars(&v, &ptr, m)?;
            match r {
                None => r = Some(row.len()),
                Some(r) if r != row.len() => {
                    return Err(Error::config(ptr, format!("expected {r} entries, got {}", row.len())))
                }
                _ => {}
            }
            p.push(row);
        }
        let r = r.unwrap_or(0);
        if r == 0 {
            return Err(Error::config("/pairing/P/0", "empty row"));
        }
        let pairing = Pairing::new(m, p).map_err(|e| Error::config("/pairing/P", e.to_string()))?;

        let module = module_spec(&v, m, pairing.rank(), r)?;
        let sigma = match v.pointer("/sigma") {
            None => vec![Scalar::zero(); r],
            Some(_) => scalars(&v, "/sigma", m)?,
        };
        if sigma.len() != r {
            return Err(Error::config("/sigma", format!("expected {r} entries, got {}", sigma.len())));
        }

        let a0 = match v.pointer("/a0") {
            None => None,
            Some(_) => Some(point(&v, "/a0", n)?),
        };
        let g0 = match v.pointer("/G0") {
            None => None,
            Some(_) => {
                if a0.is_none() {
                    return Err(Error::config("/G0", "G0 given without a0"));
                }
                let len = array(&v, "/G0")?.len();
                Some((0..len).map(|i| point(&v, &format!("/G0/{i}"), n)).collect::<Result<Vec<_>>>()?)
            }
        };
        if let Some(a0) = &a0 {
            let split = match &g0 {
                Some(g) => Splitting::with_complement(a0, g),
                None => Splitting::new(a0),
            };
            if let Err(e) = split {
                return Err(Error::config(if g0.is_some() { "/G0" } else { "/a0" }, e.to_string()));
            }
        }

        let mut windows = Windows::default();
        if v.pointer("/windows").is_some() {
            for (key, slot) in [
                ("box", &mut windows.box_radius),
                ("opbox", &mut windows.opbox),
                ("partwin", &mut windows.partwin),
                ("raisewin", &mut windows.raisewin),
            ] {
                let ptr = format!("/windows/{key}");
                if v.pointer(&ptr).is_some() {
                    *slot = uint(&v, &ptr)? as i64;
                }
            }
            if let Some(o) = v.pointer("/windows").and_then(Value::as_object) {
                if let Some(k) = o.keys().find(|k| !["box", "opbox", "partwin", "raisewin"].contains(&k.as_str())) {
                    return Err(Error::config(format!("/windows/{k}"), "unknown key"));
                }
            }
        }
        let seed = match v.pointer("/seed") {
            None => 0,
            Some(_) => uint(&v, "/seed")?,
        };

        Ok(Config { m, n, pairing, module, sigma, a0, g0, windows, seed })
    }

    pub fn r(&self) -> usize {
        self.pairing.r()
    }

    /// The tensor module `Γ(V, σ)` this config describes.
    pub fn desc(&self) -> Result<ModuleDesc> {
        let v = self.module.build(&self.pairing)?;
        ModuleDesc::new(self.pairing.clone(), v, self.sigma.clone())
    }

    pub fn window(&self) -> Result<Window> {
        Window::new(self.windows.box_radius, self.windows.opbox)
    }

    pub fn splitting(&self) -> Result<Splitting> {
        let a0 = self.a0.as_ref().ok_or_else(|| Error::config("/a0", "this command needs a0"))?;
        match &self.g0 {
            Some(g) => Splitting::with_complement(a0, g),
            None => Splitting::new(a0),
        }
    }

    /// Whether `Ker₁φ = 0`, which the `gl` realization needs.
    pub fn has_frame(&self) -> bool {
        make_frame(&self.pairing).is_ok()
    }
}

fn get<'a>(v: &'a Value, ptr: &str) -> Result<&'a Value> {
    v.pointer(ptr).ok_or_else(|| Error::config(ptr, "missing"))
}

fn uint(v: &Value, ptr: &str) -> Result<u64> {
    get(v, ptr)?.as_u64().ok_or_else(|| Error::config(ptr, "expected a non-negative integer"))
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    get(v, ptr)?.as_array().ok_or_else(|| Error::config(ptr, "expected an array"))
}

fn scalar(v: &Value, ptr: &str, m: u64) -> Result<Scalar> {
    let s = get(v, ptr)?.as_str().ok_or_else(|| Error::config(ptr, "expected a scalar string"))?;
    let x = Scalar::parse(s, m).map_err(|e| Error::config(ptr, e.to_string()))?;
    if m > 1 && !x.is_rational() && x.radicand() != m {
        return Err(Error::config(ptr, format!("not in Q(√{m})")));
    }
    Ok(x)
}

fn scalars(v: &Value, ptr: &str, m: u64) -> Result<Vec<Scalar>> {
    let len = array(v, ptr)?.len();
    (0..len).map(|i| scalar(v, &format!("{ptr}/{i}"), m)).collect()
}

fn point(v: &Value, ptr: &str, n: usize) -> Result<GroupElem> {
    let items = array(v, ptr)?;
    if items.len() != n {
        return Err(Error::config(ptr, format!("expected {n} coordinates, got {}", items.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, x) in items.iter().enumerate() {
        out.push(x.as_i64().ok_or_else(|| Error::config(format!("{ptr}/{i}"), "expected an integer"))?);
    }
    Ok(GroupElem(out))
}

fn matrices(v: &Value, ptr: &str, m: u64, count: usize) -> Result<Vec<Mat>> {
    let items = array(v, ptr)?;
    if items.len() != count {
        return Err(Error::config(ptr, format!("expected {count} matrices, got {}", items.len())));
    }
    let mut out = Vec::with_capacity(count);
    let mut dim = None;
    for (k, _) in items.iter().enumerate() {
        let mp = format!("{ptr}/{k}");
        let rows = array(v, &mp)?;
        let mut mat = Vec::with_capacity(rows.len());
        for (i, _) in rows.iter().enumerate() {
            let row = scalars(v, &format!("{mp}/{i}"), m)?;
            if row.len() != rows.len() {
                return Err(Error::config(format!("{mp}/{i}"), "matrix is not square"));
            }
            mat.push(row);
        }
        match dim {
            None => dim = Some(mat.len()),
            Some(d) if d != mat.len() => return Err(Error::config(mp, format!("expected a {d}x{d} matrix"))),
            _ => {}
        }
        if mat.is_empty() {
            return Err(Error::config(mp, "empty matrix"));
        }
        out.push(Mat::from_rows(mat));
    }
    Ok(out)
}

fn module_spec(v: &Value, m: u64, rbar: usize, r: usize) -> Result<ModuleSpec> {
    if v.pointer("/module").is_none() {
        return Ok(ModuleSpec::Vc(Scalar::zero()));
    }
    let kind = get(v, "/module/kind")?.as_str().ok_or_else(|| Error::config("/module/kind", "expected a string"))?;
    match kind {
        "wedge" => {
            let k = uint(v, "/module/k")? as usize;
            if k > rbar {
                return Err(Error::config("/module/k", format!("degree {k} exceeds rbar = {rbar}")));
            }
            Ok(ModuleSpec::Wedge(k))
        }
        "vc" => Ok(ModuleSpec::Vc(scalar(v, "/module/c", m)?)),
        "adjoint" => Ok(ModuleSpec::Adjoint),
        "gl" => Ok(ModuleSpec::Gl(matrices(v, "/module/matrices", m, rbar * rbar)?)),
        "direct" => Ok(ModuleSpec::Direct(matrices(v, "/module/matrices", m, r * r)?)),
        other => Err(Error::config("/module/kind", format!("unknown kind {other:?}"))),
    }
}
