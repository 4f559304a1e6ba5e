//! Portable binary checkpoints.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic      8 bytes   "ECCNCKPT"
//! version    u32       1
//! header     u32 length + UTF-8 `key=value` pairs separated by ';'
//!                      (kind=single|multi|ffn; mode=constrained|unconstrained; n_max=<k>)
//! count      u32       number of tensors
//! tensor     u32 name length + UTF-8 name,
//!            u32 rank, rank × u64 dims,
//!            product(dims) × f64 values, row-major
//! ```
//!
//! Tensor names: `layer<j>.W` (a×a), `layer<j>.U` (1×a), `layer<j>.b` (a),
//! `layer<j>.h0` (a) for recurrent layers; `dense<k>.W` (out×in),
//! `dense<k>.b` (out) for the feed-forward layers; `out.w` and `out.b` (1)
//! for the output unit.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use super::init::Mode;
use super::layer::RnnLayer;
use super::model::{Model, Network};
use super::params::{Dense, FeedForwardParams, MultiLayerRnnParams, SingleLayerRnnParams};
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"ECCNCKPT";
const VERSION: u32 = 1;

struct Tensor {
    dims: Vec<u64>,
    data: Vec<f64>,
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

fn put_tensor(out: &mut Vec<u8>, name: &str, dims: &[usize], data: &[f64]) {
    debug_assert_eq!(dims.iter().product::<usize>(), data.len());
    put_str(out, name);
    put_u32(out, dims.len() as u32);
    for &d in dims {
        out.extend_from_slice(&(d as u64).to_le_bytes());
    }
    for v in data {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

fn put_layer(out: &mut Vec<u8>, j: usize, l: &RnnLayer) {
    let a = l.width;
    put_tensor(out, &format!("layer{j}.W"), &[a, a], &l.w);
    put_tensor(out, &format!("layer{j}.U"), &[1, a], &l.u);
    put_tensor(out, &format!("layer{j}.b"), &[a], &l.b);
    put_tensor(out, &format!("layer{j}.h0"), &[a], &l.h0);
}

pub fn encode_checkpoint(model: &Model) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    put_u32(&mut out, VERSION);
    let mode = match model.mode {
        Mode::Constrained => "constrained",
        Mode::Unconstrained => "unconstrained",
    };
    put_str(
        &mut out,
        &format!("kind={};mode={mode};n_max={}", model.kind_name(), model.n_max),
    );
    let mut body = Vec::new();
    let mut count = 0u32;
    let (wo, bo) = match &model.network {
        Network::Single(p) => {
            put_layer(&mut body, 0, &p.layer);
            count += 4;
            (&p.wo, p.bo)
        }
        Network::Multi(p) => {
            for (j, l) in p.layers.iter().enumerate() {
                put_layer(&mut body, j, l);
                count += 4;
            }
            (&p.wo, p.bo)
        }
        Network::Ffn(p) => {
            for (k, d) in p.hidden.iter().enumerate() {
                put_tensor(&mut body, &format!("dense{k}.W"), &[d.outputs, d.inputs], &d.w);
                put_tensor(&mut body, &format!("dense{k}.b"), &[d.outputs], &d.b);
                count += 2;
            }
            (&p.wo, p.bo)
        }
    };
    put_tensor(&mut body, "out.w", &[wo.len()], wo);
    put_tensor(&mut body, "out.b", &[1], &[bo]);
    count += 2;
    put_u32(&mut out, count);
    out.extend_from_slice(&body);
    out
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        if self.buf.len() < n {
            return Err(Error::Checkpoint("truncated checkpoint".into()));
        }
        let (head, rest) = self.buf.split_at(n);
        self.buf = rest;
        Ok(head)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let n = self.u32()? as usize;
        String::from_utf8(self.take(n)?.to_vec())
            .map_err(|_| Error::Checkpoint("invalid UTF-8 in checkpoint".into()))
    }
}

fn tensor(map: &mut BTreeMap<String, Tensor>, name: &str, dims: &[usize]) -> Result<Vec<f64>> {
    let t = map
        .remove(name)
        .ok_or_else(|| Error::Checkpoint(format!("missing tensor {name}")))?;
    let want: Vec<u64> = dims.iter().map(|&d| d as u64).collect();
    if t.dims != want {
        return Err(Error::Checkpoint(format!(
            "tensor {name} has shape {:?}, expected {want:?}",
            t.dims
        )));
    }
    Ok(t.data)
}

fn width_of(map: &BTreeMap<String, Tensor>, name: &str, axis: usize) -> Result<usize> {
    map.get(name)
        .and_then(|t| t.dims.get(axis))
        .map(|&d| d as usize)
        .ok_or_else(|| Error::Checkpoint(format!("missing tensor {name}")))
}

fn take_layer(map: &mut BTreeMap<String, Tensor>, j: usize) -> Result<RnnLayer> {
    let a = width_of(map, &format!("layer{j}.b"), 0)?;
    Ok(RnnLayer {
        width: a,
        w: tensor(map, &format!("layer{j}.W"), &[a, a])?,
        u: tensor(map, &format!("layer{j}.U"), &[1, a])?,
        b: tensor(map, &format!("layer{j}.b"), &[a])?,
        h0: tensor(map, &format!("layer{j}.h0"), &[a])?,
    })
}

pub fn decode_checkpoint(bytes: &[u8]) -> Result<Model> {
    let mut r = Reader { buf: bytes };
    if r.take(8)? != MAGIC {
        return Err(Error::Checkpoint("not a checkpoint (bad magic)".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Checkpoint(format!("unsupported checkpoint version {version}")));
    }
    let header = r.string()?;
    let fields: BTreeMap<&str, &str> = header.split(';').filter_map(|kv| kv.split_once('=')).collect();
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::Checkpoint(format!("header lacks {k}")))
    };
    let mode = match get("mode")? {
        "constrained" => Mode::Constrained,
        "unconstrained" => Mode::Unconstrained,
        other => return Err(Error::Checkpoint(format!("unknown mode {other}"))),
    };
    let n_max: usize = get("n_max")?
        .parse()
        .map_err(|_| Error::Checkpoint("bad n_max".into()))?;

    let count = r.u32()?;
    let mut map = BTreeMap::new();
    for _ in 0..count {
        let name = r.string()?;
        let rank = r.u32()? as usize;
        let dims = (0..rank).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
        let len = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
        let len = len
            .filter(|&l| l.checked_mul(8).is_some_and(|b| b <= r.buf.len()))
            .ok_or_else(|| Error::Checkpoint(format!("tensor {name} overruns the file")))?;
        let data = r
            .take(len * 8)?
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        map.insert(name, Tensor { dims, data });
    }
    if !r.buf.is_empty() {
        return Err(Error::Checkpoint("trailing bytes after tensors".into()));
    }

    let last_width;
    let network = match get("kind")? {
        "single" => {
            let layer = take_layer(&mut map, 0)?;
            last_width = layer.width;
            Network::Single(SingleLayerRnnParams {
                layer,
                wo: tensor(&mut map, "out.w", &[last_width])?,
                bo: tensor(&mut map, "out.b", &[1])?[0],
            })
        }
        "multi" => {
            let mut layers = Vec::new();
            while map.contains_key(&format!("layer{}.b", layers.len())) {
                let j = layers.len();
                layers.push(take_layer(&mut map, j)?);
            }
            last_width = layers
                .last()
                .map(|l| l.width)
                .ok_or_else(|| Error::Checkpoint("no recurrent layers".into()))?;
            Network::Multi(MultiLayerRnnParams {
                layers,
                wo: tensor(&mut map, "out.w", &[last_width])?,
                bo: tensor(&mut map, "out.b", &[1])?[0],
            })
        }
        "ffn" => {
            let mut dense = Vec::new();
            for k in 0..3 {
                let outputs = width_of(&map, &format!("dense{k}.W"), 0)?;
                let inputs = width_of(&map, &format!("dense{k}.W"), 1)?;
                dense.push(Dense {
                    inputs,
                    outputs,
                    w: tensor(&mut map, &format!("dense{k}.W"), &[outputs, inputs])?,
                    b: tensor(&mut map, &format!("dense{k}.b"), &[outputs])?,
                });
            }
            last_width = dense[2].outputs;
            let hidden: [Dense; 3] = dense.try_into().map_err(|_| Error::Checkpoint("dense".into()))?;
            Network::Ffn(FeedForwardParams {
                hidden,
                wo: tensor(&mut map, "out.w", &[last_width])?,
                bo: tensor(&mut map, "out.b", &[1])?[0],
            })
        }
        other => return Err(Error::Checkpoint(format!("unknown model kind {other}"))),
    };
    if let Some(extra) = map.keys().next() {
        return Err(Error::Checkpoint(format!("unexpected tensor {extra}")));
    }
    Model::new(network, mode, n_max)
}

pub fn save_checkpoint(model: &Model, path: &Path) -> Result<()> {
    crate::harness::write_atomic(path, &encode_checkpoint(model))
}

pub fn load_checkpoint(path: &Path) -> Result<Model> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    decode_checkpoint(&bytes)
}
