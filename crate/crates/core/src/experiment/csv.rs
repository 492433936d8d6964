use crate::stats::format_float;

/// CSV output buffered in memory, with floats in `%.9g` form.
pub struct CsvWriter {
    inner: csv::Writer<Vec<u8>>,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut inner = csv::Writer::from_writer(Vec::new());
        inner.write_record(header).expect("in-memory write");
        CsvWriter { inner }
    }

    pub fn float(&self, x: f64) -> String {
        format_float(x)
    }

    /// Panics if the row width differs from the header.
    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields).expect("row width matches header");
    }

    pub fn finish(self) -> String {
        let bytes = self.inner.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("fields are UTF-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_rows() {
        let mut w = CsvWriter::new(&["a", "b"]);
        w.row(["1", "x"]);
        let f = w.float(0.1 + 0.2);
        w.row([String::from("2"), f]);
        assert_eq!(w.finish(), "a,b\n1,x\n2,0.3\n");
    }
}
