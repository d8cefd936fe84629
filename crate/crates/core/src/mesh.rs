//! Gmsh MSH ingestion and conversion of linear triangles into lumped
//! material points.
//!
//! Only the ASCII flavours of MSH 2.2 and 4.1 are read. Three-node triangles
//! (type 2) carry volume; two-node lines (type 1) and one-node points
//! (type 15) are kept only for their physical-group membership, which is how
//! boundary conditions find their nodes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const ELEMENT_LINE: u32 = 1;
const ELEMENT_TRIANGLE: u32 = 2;
const ELEMENT_POINT: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: u64,
    pub x: f64,
    pub y: f64,
}

/// A linear triangle, stored counterclockwise. `nodes` are indices into
/// [`Mesh::nodes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub id: u64,
    pub nodes: [usize; 3],
}

/// A named physical group, reduced to the set of nodes its elements touch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhysicalGroup {
    pub dim: u8,
    pub tag: i32,
    pub name: String,
    /// Sorted node indices.
    pub nodes: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    nodes: Vec<Node>,
    triangles: Vec<Triangle>,
    groups: Vec<PhysicalGroup>,
}

impl Mesh {
    /// Builds a mesh from raw node and triangle lists, checking ids and
    /// normalizing triangle orientation. Triangles reference node ids.
    pub fn from_parts(
        nodes: Vec<Node>,
        triangles: Vec<(u64, [u64; 3])>,
        groups: Vec<(u8, i32, String, Vec<u64>)>,
    ) -> Result<Mesh> {
        let index = node_index(&nodes)?;
        let lookup = |element: u64, id: u64| {
            index.get(&id).copied().ok_or_else(|| {
                Error::MeshIntegrity(format!("element {element} references unknown node {id}"))
            })
        };
        let mut tris = Vec::with_capacity(triangles.len());
        for (id, ids) in triangles {
            let mut n = [lookup(id, ids[0])?, lookup(id, ids[1])?, lookup(id, ids[2])?];
            let doubled = doubled_signed_area(&nodes, n);
            let scale = longest_edge_sq(&nodes, n);
            if !(doubled.abs() > 1e-12 * scale) {
                return Err(Error::DegenerateElement { element: id });
            }
            if doubled < 0.0 {
                n.swap(1, 2);
            }
            tris.push(Triangle { id, nodes: n });
        }
        let mut out_groups = Vec::with_capacity(groups.len());
        for (dim, tag, name, ids) in groups {
            let mut members = ids
                .into_iter()
                .map(|id| {
                    index.get(&id).copied().ok_or_else(|| {
                        Error::MeshIntegrity(format!("group `{name}` references unknown node {id}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            members.sort_unstable();
            members.dedup();
            out_groups.push(PhysicalGroup { dim, tag, name, nodes: members });
        }
        Ok(Mesh { nodes, triangles: tris, groups: out_groups })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn groups(&self) -> &[PhysicalGroup] {
        &self.groups
    }

    pub fn group(&self, name: &str) -> Option<&PhysicalGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    /// Area of triangle `i` (always positive once the mesh is built).
    pub fn triangle_area(&self, i: usize) -> f64 {
        0.5 * doubled_signed_area(&self.nodes, self.triangles[i].nodes)
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|i| self.triangle_area(i)).sum()
    }

    /// Emits the mesh as MSH 2.2 ASCII. Physical groups are written as
    /// one-node point elements so that their node sets survive a re-read;
    /// they come back as point groups with the same names, tagged 1, 2, ...
    /// in order.
    pub fn to_msh22(&self) -> String {
        let mut out = String::new();
        out.push_str("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n");
        if !self.groups.is_empty() {
            let _ = writeln!(out, "$PhysicalNames\n{}", self.groups.len());
            for (k, g) in self.groups.iter().enumerate() {
                let _ = writeln!(out, "0 {} \"{}\"", k + 1, g.name);
            }
            out.push_str("$EndPhysicalNames\n");
        }
        let _ = writeln!(out, "$Nodes\n{}", self.nodes.len());
        for n in &self.nodes {
            let _ = writeln!(out, "{} {:?} {:?} 0", n.id, n.x, n.y);
        }
        out.push_str("$EndNodes\n");
        let group_points: usize = self.groups.iter().map(|g| g.nodes.len()).sum();
        let _ = writeln!(out, "$Elements\n{}", self.triangles.len() + group_points);
        let mut next_id = self.triangles.iter().map(|t| t.id).max().unwrap_or(0) + 1;
        for t in &self.triangles {
            let [a, b, c] = t.nodes.map(|i| self.nodes[i].id);
            let _ = writeln!(out, "{} 2 2 0 1 {a} {b} {c}", t.id);
        }
        for (k, g) in self.groups.iter().enumerate() {
            for &n in &g.nodes {
                let _ = writeln!(out, "{next_id} 15 2 {} 0 {}", k + 1, self.nodes[n].id);
                next_id += 1;
            }
        }
        out.push_str("$EndElements\n");
        out
    }
}

fn node_index(nodes: &[Node]) -> Result<HashMap<u64, usize>> {
    let mut index = HashMap::with_capacity(nodes.len());
    for (i, n) in nodes.iter().enumerate() {
        if index.insert(n.id, i).is_some() {
            return Err(Error::MeshIntegrity(format!("duplicate node id {}", n.id)));
        }
    }
    Ok(index)
}

fn doubled_signed_area(nodes: &[Node], t: [usize; 3]) -> f64 {
    let (a, b, c) = (nodes[t[0]], nodes[t[1]], nodes[t[2]]);
    (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)
}

fn longest_edge_sq(nodes: &[Node], t: [usize; 3]) -> f64 {
    let d = |i: usize, j: usize| {
        let (p, q) = (nodes[t[i]], nodes[t[j]]);
        (p.x - q.x).powi(2) + (p.y - q.y).powi(2)
    };
    d(0, 1).max(d(1, 2)).max(d(2, 0))
}

pub fn read_msh(path: impl AsRef<Path>) -> Result<Mesh> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::File { path: path.to_owned(), source })?;
    let text = String::from_utf8(bytes).map_err(|_| Error::BinaryMsh)?;
    parse_msh(&text)
}

/// Parses an ASCII MSH 2.2 or 4.1 file.
pub fn parse_msh(contents: &str) -> Result<Mesh> {
    let mut lines = LineReader::new(contents);
    let mut version = None;
    let mut names: BTreeMap<(u8, i32), String> = BTreeMap::new();
    let mut entity_physicals: HashMap<(u8, i32), Vec<i32>> = HashMap::new();
    let mut nodes = Vec::new();
    let mut raw_elements = Vec::new();

    while let Some((line_no, line)) = lines.next() {
        let section = line.trim();
        match section {
            "$MeshFormat" => {
                let (no, header) = lines.expect("mesh format header")?;
                let mut it = header.split_whitespace();
                let ver = it.next().ok_or_else(|| Error::parse(no, "missing version"))?;
                let file_type: u32 = parse_token(it.next(), no, "file type")?;
                if file_type != 0 {
                    return Err(Error::BinaryMsh);
                }
                version = Some(match ver {
                    "2.2" | "2.1" | "2" => MshVersion::V2,
                    "4.1" => MshVersion::V4,
                    other => {
                        return Err(Error::parse(no, format!("unsupported MSH version {other}")))
                    }
                });
                lines.end_section("$EndMeshFormat")?;
            }
            "$PhysicalNames" => {
                let (no, count) = lines.expect("physical name count")?;
                let count: usize = parse_token(Some(count.trim()), no, "physical name count")?;
                for _ in 0..count {
                    let (no, l) = lines.expect("physical name")?;
                    let mut it = l.split_whitespace();
                    let dim: u8 = parse_token(it.next(), no, "physical dimension")?;
                    let tag: i32 = parse_token(it.next(), no, "physical tag")?;
                    let name = l
                        .split_once('"')
                        .and_then(|(_, rest)| rest.rsplit_once('"'))
                        .map(|(n, _)| n.to_owned())
                        .ok_or_else(|| Error::parse(no, "physical name must be quoted"))?;
                    names.insert((dim, tag), name);
                }
                lines.end_section("$EndPhysicalNames")?;
            }
            "$Entities" => {
                require_version(version, MshVersion::V4, line_no, section)?;
                entity_physicals = parse_entities(&mut lines)?;
            }
            "$Nodes" => {
                nodes = match version {
                    Some(MshVersion::V2) => parse_nodes_v2(&mut lines)?,
                    Some(MshVersion::V4) => parse_nodes_v4(&mut lines)?,
                    None => return Err(Error::parse(line_no, "$Nodes before $MeshFormat")),
                };
            }
            "$Elements" => {
                raw_elements = match version {
                    Some(MshVersion::V2) => parse_elements_v2(&mut lines)?,
                    Some(MshVersion::V4) => parse_elements_v4(&mut lines, &entity_physicals)?,
                    None => return Err(Error::parse(line_no, "$Elements before $MeshFormat")),
                };
            }
            s if s.starts_with('$') && !s.starts_with("$End") => {
                let end = format!("$End{}", &s[1..]);
                lines.skip_to(&end)?;
            }
            "" => {}
            other => {
                return Err(Error::parse(line_no, format!("unexpected content `{other}`")));
            }
        }
    }
    if version.is_none() {
        return Err(Error::parse(1, "missing $MeshFormat section"));
    }

    let mut triangles = Vec::new();
    let mut group_nodes: BTreeMap<(u8, i32), Vec<u64>> = BTreeMap::new();
    for el in raw_elements {
        if el.kind == ELEMENT_TRIANGLE {
            triangles.push((el.id, [el.nodes[0], el.nodes[1], el.nodes[2]]));
        }
        let dim = element_dim(el.kind);
        for &phys in &el.physicals {
            if phys != 0 {
                group_nodes.entry((dim, phys)).or_default().extend(&el.nodes);
            }
        }
    }
    // Named groups without elements still exist (with no nodes).
    for key in names.keys() {
        group_nodes.entry(*key).or_default();
    }
    let groups = group_nodes
        .into_iter()
        .map(|((dim, tag), ids)| {
            let name = names.get(&(dim, tag)).cloned().unwrap_or_else(|| tag.to_string());
            (dim, tag, name, ids)
        })
        .collect();
    Mesh::from_parts(nodes, triangles, groups)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MshVersion {
    V2,
    V4,
}

fn require_version(found: Option<MshVersion>, want: MshVersion, line: usize, section: &str) -> Result<()> {
    if found != Some(want) {
        return Err(Error::parse(line, format!("section {section} is not valid for this MSH version")));
    }
    Ok(())
}

struct RawElement {
    id: u64,
    kind: u32,
    physicals: Vec<i32>,
    nodes: Vec<u64>,
}

fn element_dim(kind: u32) -> u8 {
    match kind {
        ELEMENT_POINT => 0,
        ELEMENT_LINE => 1,
        _ => 2,
    }
}

fn nodes_per_element(kind: u32, line: usize) -> Result<usize> {
    match kind {
        ELEMENT_POINT => Ok(1),
        ELEMENT_LINE => Ok(2),
        ELEMENT_TRIANGLE => Ok(3),
        other => Err(Error::parse(
            line,
            format!("unsupported element type {other} (only points, 2-node lines and 3-node triangles)"),
        )),
    }
}

struct LineReader<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        LineReader { inner: text.lines().enumerate(), last: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let (i, l) = self.inner.next()?;
        self.last = i + 1;
        Some((i + 1, l))
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        loop {
            match self.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some(item) => return Ok(item),
                None => return Err(Error::parse(self.last, format!("unexpected end of file, expected {what}"))),
            }
        }
    }

    fn end_section(&mut self, end: &str) -> Result<()> {
        let (no, l) = self.expect(end)?;
        if l.trim() != end {
            return Err(Error::parse(no, format!("expected {end}, found `{}`", l.trim())));
        }
        Ok(())
    }

    fn skip_to(&mut self, end: &str) -> Result<()> {
        while let Some((_, l)) = self.next() {
            if l.trim() == end {
                return Ok(());
            }
        }
        Err(Error::parse(self.last, format!("missing {end}")))
    }
}

fn parse_token<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

fn parse_entities(lines: &mut LineReader<'_>) -> Result<HashMap<(u8, i32), Vec<i32>>> {
    let (no, header) = lines.expect("entity counts")?;
    let mut it = header.split_whitespace();
    let mut counts = [0usize; 4];
    for c in counts.iter_mut() {
        *c = parse_token(it.next(), no, "entity count")?;
    }
    let mut map = HashMap::new();
    for (dim, &count) in counts.iter().enumerate() {
        for _ in 0..count {
            let (no, l) = lines.expect("entity")?;
            let mut it = l.split_whitespace();
            let tag: i32 = parse_token(it.next(), no, "entity tag")?;
            // points carry x y z, higher entities a bounding box
            let skip = if dim == 0 { 3 } else { 6 };
            for _ in 0..skip {
                let _: f64 = parse_token(it.next(), no, "entity coordinate")?;
            }
            let n_phys: usize = parse_token(it.next(), no, "physical tag count")?;
            let phys = (0..n_phys)
                .map(|_| parse_token(it.next(), no, "physical tag"))
                .collect::<Result<Vec<i32>>>()?;
            map.insert((dim as u8, tag), phys);
        }
    }
    lines.end_section("$EndEntities")?;
    Ok(map)
}

fn parse_nodes_v2(lines: &mut LineReader<'_>) -> Result<Vec<Node>> {
    let (no, count) = lines.expect("node count")?;
    let count: usize = parse_token(Some(count.trim()), no, "node count")?;
    let mut nodes = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, l) = lines.expect("node")?;
        let mut it = l.split_whitespace();
        let id = parse_token(it.next(), no, "node id")?;
        let x = parse_token(it.next(), no, "x coordinate")?;
        let y = parse_token(it.next(), no, "y coordinate")?;
        let _: f64 = parse_token(it.next(), no, "z coordinate")?;
        nodes.push(Node { id, x, y });
    }
    lines.end_section("$EndNodes")?;
    Ok(nodes)
}

fn parse_nodes_v4(lines: &mut LineReader<'_>) -> Result<Vec<Node>> {
    let (no, header) = lines.expect("node header")?;
    let mut it = header.split_whitespace();
    let blocks: usize = parse_token(it.next(), no, "node block count")?;
    let total: usize = parse_token(it.next(), no, "node count")?;
    let mut nodes = Vec::with_capacity(total);
    for _ in 0..blocks {
        let (no, l) = lines.expect("node block header")?;
        let mut it = l.split_whitespace();
        let _dim: u8 = parse_token(it.next(), no, "entity dimension")?;
        let _tag: i32 = parse_token(it.next(), no, "entity tag")?;
        let _parametric: u8 = parse_token(it.next(), no, "parametric flag")?;
        let n: usize = parse_token(it.next(), no, "nodes in block")?;
        let mut ids = Vec::with_capacity(n);
        for _ in 0..n {
            let (no, l) = lines.expect("node tag")?;
            ids.push(parse_token(Some(l.trim()), no, "node tag")?);
        }
        for id in ids {
            let (no, l) = lines.expect("node coordinates")?;
            let mut it = l.split_whitespace();
            let x = parse_token(it.next(), no, "x coordinate")?;
            let y = parse_token(it.next(), no, "y coordinate")?;
            let _: f64 = parse_token(it.next(), no, "z coordinate")?;
            nodes.push(Node { id, x, y });
        }
    }
    if nodes.len() != total {
        return Err(Error::parse(no, format!("header announces {total} nodes, found {}", nodes.len())));
    }
    lines.end_section("$EndNodes")?;
    Ok(nodes)
}

fn parse_elements_v2(lines: &mut LineReader<'_>) -> Result<Vec<RawElement>> {
    let (no, count) = lines.expect("element count")?;
    let count: usize = parse_token(Some(count.trim()), no, "element count")?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, l) = lines.expect("element")?;
        let mut it = l.split_whitespace();
        let id = parse_token(it.next(), no, "element id")?;
        let kind = parse_token(it.next(), no, "element type")?;
        let n_tags: usize = parse_token(it.next(), no, "tag count")?;
        let tags = (0..n_tags)
            .map(|_| parse_token(it.next(), no, "element tag"))
            .collect::<Result<Vec<i32>>>()?;
        let n = nodes_per_element(kind, no)?;
        let nodes = (0..n)
            .map(|_| parse_token(it.next(), no, "element node"))
            .collect::<Result<Vec<u64>>>()?;
        let physicals = tags.first().copied().into_iter().collect();
        out.push(RawElement { id, kind, physicals, nodes });
    }
    lines.end_section("$EndElements")?;
    Ok(out)
}

fn parse_elements_v4(
    lines: &mut LineReader<'_>,
    entity_physicals: &HashMap<(u8, i32), Vec<i32>>,
) -> Result<Vec<RawElement>> {
    let (no, header) = lines.expect("element header")?;
    let mut it = header.split_whitespace();
    let blocks: usize = parse_token(it.next(), no, "element block count")?;
    let total: usize = parse_token(it.next(), no, "element count")?;
    let mut out = Vec::with_capacity(total);
    for _ in 0..blocks {
        let (no, l) = lines.expect("element block header")?;
        let mut it = l.split_whitespace();
        let dim: u8 = parse_token(it.next(), no, "entity dimension")?;
        let tag: i32 = parse_token(it.next(), no, "entity tag")?;
        let kind: u32 = parse_token(it.next(), no, "element type")?;
        let n: usize = parse_token(it.next(), no, "elements in block")?;
        let per = nodes_per_element(kind, no)?;
        let physicals = entity_physicals.get(&(dim, tag)).cloned().unwrap_or_default();
        for _ in 0..n {
            let (no, l) = lines.expect("element")?;
            let mut it = l.split_whitespace();
            let id = parse_token(it.next(), no, "element id")?;
            let nodes = (0..per)
                .map(|_| parse_token(it.next(), no, "element node"))
                .collect::<Result<Vec<u64>>>()?;
            out.push(RawElement { id, kind, physicals: physicals.clone(), nodes });
        }
    }
    lines.end_section("$EndElements")?;
    Ok(out)
}

/// A lumped node: position, volume, and the horizon data filled in by
/// [`crate::horizon`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialPoint {
    /// Id of the mesh node this point was lumped from.
    pub node_id: u64,
    pub x: f64,
    pub y: f64,
    /// Lumped volume [m³].
    pub volume: f64,
    /// Distance to the nearest other point (0 until computed).
    pub d_min: f64,
    /// Horizon radius (0 until assigned).
    pub horizon: f64,
}

impl MaterialPoint {
    pub fn distance(&self, other: &MaterialPoint) -> f64 {
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// One point per mesh node, each receiving a third of the volume of every
/// incident triangle.
pub fn lump_volumes(mesh: &Mesh, thickness: f64) -> Result<Vec<MaterialPoint>> {
    if !(thickness.is_finite() && thickness > 0.0) {
        return Err(Error::config("thickness", "must be positive"));
    }
    let mut area = vec![0.0; mesh.nodes.len()];
    for (i, t) in mesh.triangles.iter().enumerate() {
        let share = mesh.triangle_area(i) / 3.0;
        for &n in &t.nodes {
            area[n] += share;
        }
    }
    mesh.nodes
        .iter()
        .zip(area)
        .map(|(n, a)| {
            if a > 0.0 {
                Ok(MaterialPoint {
                    node_id: n.id,
                    x: n.x,
                    y: n.y,
                    volume: thickness * a,
                    d_min: 0.0,
                    horizon: 0.0,
                })
            } else {
                Err(Error::IsolatedNode { node: n.id })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_TRIANGLE: &str = "\
$MeshFormat
2.2 0 8
$EndMeshFormat
$Nodes
3
1 0 0 0
2 1 0 0
3 0 1 0
$EndNodes
$Elements
1
1 2 2 0 1 1 2 3
$EndElements
";

    const UNIT_SQUARE_V4: &str = "\
$MeshFormat
4.1 0 8
$EndMeshFormat
$PhysicalNames
2
1 7 \"left\"
2 8 \"body\"
$EndPhysicalNames
$Entities
0 1 1 0
3 0 0 0 0 1 0 1 7 0
1 0 0 0 1 1 0 1 8 0
$EndEntities
$Nodes
1 4 1 4
2 1 0 4
1
2
3
4
0 0 0
1 0 0
1 1 0
0 1 0
$EndNodes
$Elements
2 3 1 3
1 3 1 1
1 4 1
2 1 2 2
2 1 2 3
3 1 4 3
$EndElements
";

    #[test]
    fn single_triangle_area() {
        let mesh = parse_msh(ONE_TRIANGLE).unwrap();
        assert_eq!(mesh.triangles().len(), 1);
        assert!((mesh.total_area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unknown_node_is_an_integrity_error() {
        let bad = ONE_TRIANGLE.replace("1 2 2 0 1 1 2 3", "1 2 2 0 1 1 2 99");
        assert!(matches!(parse_msh(&bad), Err(Error::MeshIntegrity(_))));
    }

    #[test]
    fn degenerate_triangle_reports_its_id() {
        let bad = ONE_TRIANGLE.replace("3 0 1 0", "3 2 0 0").replace("1 2 2 0 1 1 2 3", "42 2 2 0 1 1 2 3");
        assert!(matches!(parse_msh(&bad), Err(Error::DegenerateElement { element: 42 })));
    }

    #[test]
    fn clockwise_triangles_are_flipped() {
        let cw = ONE_TRIANGLE.replace("1 2 2 0 1 1 2 3", "1 2 2 0 1 1 3 2");
        let mesh = parse_msh(&cw).unwrap();
        assert!(mesh.triangle_area(0) > 0.0);
    }

    #[test]
    fn malformed_header_reports_line() {
        let bad = ONE_TRIANGLE.replace("2.2 0 8", "2.2 zero 8");
        match parse_msh(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn binary_files_are_rejected() {
        let bin = ONE_TRIANGLE.replace("2.2 0 8", "2.2 1 8");
        assert!(matches!(parse_msh(&bin), Err(Error::BinaryMsh)));
    }

    #[test]
    fn v4_unit_square_with_groups() {
        let mesh = parse_msh(UNIT_SQUARE_V4).unwrap();
        assert_eq!(mesh.nodes().len(), 4);
        assert_eq!(mesh.triangles().len(), 2);
        assert!((mesh.total_area() - 1.0).abs() < 1e-15);
        let left = mesh.group("left").unwrap();
        assert_eq!(left.dim, 1);
        let ids: Vec<u64> = left.nodes.iter().map(|&i| mesh.nodes()[i].id).collect();
        assert_eq!(ids, vec![1, 4]);
        assert_eq!(mesh.group("body").unwrap().nodes.len(), 4);
    }

    #[test]
    fn lumped_volumes_single_triangle() {
        let mesh = parse_msh(ONE_TRIANGLE).unwrap();
        let pts = lump_volumes(&mesh, 1.0).unwrap();
        for p in &pts {
            assert!((p.volume - 1.0 / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn lumped_volumes_unit_square() {
        let mesh = parse_msh(UNIT_SQUARE_V4).unwrap();
        let pts = lump_volumes(&mesh, 1.0).unwrap();
        // the diagonal runs 1-3, so nodes 1 and 3 are shared by both triangles
        let v: Vec<f64> = pts.iter().map(|p| p.volume).collect();
        let expect = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0];
        for (a, b) in v.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15, "{v:?}");
        }
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn node_without_triangle_is_rejected() {
        let extra = ONE_TRIANGLE.replace("3\n1 0 0 0", "4\n9 5 5 0\n1 0 0 0");
        let mesh = parse_msh(&extra).unwrap();
        assert!(matches!(lump_volumes(&mesh, 1.0), Err(Error::IsolatedNode { node: 9 })));
    }

    #[test]
    fn unsupported_elements_are_rejected() {
        let quad = ONE_TRIANGLE.replace("1 2 2 0 1 1 2 3", "1 3 2 0 1 1 2 3 3");
        assert!(matches!(parse_msh(&quad), Err(Error::Parse { .. })));
    }
}
