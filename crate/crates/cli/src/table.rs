//! CSV form of a realized frame.
//!
//! Columns: `id`, `word`, `coordinate`, then one `image:<generator>` column
//! per generator holding the id of the image point, empty where the image
//! escapes the frame. Coordinates are exact dyadics written as `n` or `n/2^k`.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use plfocal::realize::induced_map;
use plfocal::{Dyadic, OrbitFrame, SignEngine};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameRow {
    pub id: usize,
    pub word: String,
    pub coordinate: Dyadic,
    pub images: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameTable {
    pub generators: Vec<String>,
    pub rows: Vec<FrameRow>,
}

const IMAGE_PREFIX: &str = "image:";

impl FrameTable {
    pub fn from_frame<S: SignEngine>(frame: &OrbitFrame<S::Elem>, engine: &S) -> Result<FrameTable> {
        let maps = frame
            .generators
            .iter()
            .map(|(_, g)| induced_map(frame, engine, g))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = frame
            .points
            .iter()
            .zip(&frame.coords)
            .enumerate()
            .map(|(i, (p, c))| FrameRow {
                id: i,
                word: p.word.clone(),
                coordinate: c.clone(),
                images: maps.iter().map(|m| m[i]).collect(),
            })
            .collect();
        Ok(FrameTable { generators: frame.generators.iter().map(|(n, _)| n.clone()).collect(), rows })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["id".to_string(), "word".into(), "coordinate".into()];
        header.extend(self.generators.iter().map(|g| format!("{IMAGE_PREFIX}{g}")));
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.id.to_string(), r.word.clone(), r.coordinate.to_string()];
            rec.extend(r.images.iter().map(|m| m.map_or(String::new(), |j| j.to_string())));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Parses the format written by [`FrameTable::write_csv`].
    pub fn read_csv<R: Read>(input: R) -> Result<FrameTable> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        if header.len() < 3 || &header[0] != "id" || &header[1] != "word" || &header[2] != "coordinate" {
            bail!("header must start with id,word,coordinate");
        }
        let generators = header
            .iter()
            .skip(3)
            .map(|h| h.strip_prefix(IMAGE_PREFIX).map(str::to_string).with_context(|| format!("bad column `{h}`")))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for (line, rec) in r.records().enumerate() {
            let rec = rec?;
            let ctx = || format!("row {}", line + 1);
            let images = rec
                .iter()
                .skip(3)
                .map(|v| if v.is_empty() { Ok(None) } else { v.parse().map(Some) })
                .collect::<Result<Vec<_>, _>>()
                .with_context(ctx)?;
            rows.push(FrameRow {
                id: rec[0].parse().with_context(ctx)?,
                word: rec[1].to_string(),
                coordinate: rec[2].parse().map_err(|e| anyhow::anyhow!("{e:?}")).with_context(ctx)?,
                images,
            });
        }
        Ok(FrameTable { generators, rows })
    }
}
