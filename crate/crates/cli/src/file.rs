//! Game files and JSON rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use coopgap::game_core::MAX_PLAYERS;
use coopgap::rational::{format, parse};
use coopgap::{Coalition, Error, IncompleteGame, PlayerCentered, Rational, Result, TUGame};

/// On-disk description of a (possibly incomplete) game.
///
/// `known[j]` is a sorted list of player indices whose worth is `values[j]`.
/// The empty coalition is implicit and may be listed only with worth `"0"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    pub known: Vec<Vec<usize>>,
    pub values: Vec<String>,
}

fn coalition(n: usize, players: &[usize]) -> Result<Coalition> {
    if let Some(&p) = players.iter().find(|&&p| p >= n) {
        return Err(Error::PlayerOutOfRange { player: p, n });
    }
    if players.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGame(format!(
            "coalition {players:?} is not a strictly increasing player list"
        )));
    }
    Ok(Coalition::from_players(players.iter().copied()))
}

impl GameFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGame(format!("malformed game file: {e}")))
    }

    fn entries(&self) -> Result<Vec<(Coalition, Rational)>> {
        if self.n > MAX_PLAYERS {
            return Err(Error::TooManyPlayers(self.n));
        }
        if let Some(names) = &self.players {
            if names.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: names.len(),
                });
            }
        }
        if self.known.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.known.len(),
                got: self.values.len(),
            });
        }
        self.known
            .iter()
            .zip(&self.values)
            .map(|(s, x)| Ok((coalition(self.n, s)?, parse(x)?)))
            .collect()
    }

    pub fn incomplete(&self) -> Result<IncompleteGame> {
        IncompleteGame::new(self.n, self.entries()?)
    }

    /// The player-centered game; requires `center`.
    pub fn player_centered(&self) -> Result<PlayerCentered> {
        let center = self
            .center
            .ok_or_else(|| Error::InvalidGame("the game file has no center player".into()))?;
        PlayerCentered::from_incomplete(self.incomplete()?, center)
    }

    /// Same game with coalitions sorted by mask, `∅` dropped and values reduced.
    pub fn canonical(&self) -> Result<Self> {
        let game = self.incomplete()?;
        let mut out = Self::from_incomplete(&game, self.center);
        out.players.clone_from(&self.players);
        Ok(out)
    }

    pub fn from_incomplete(game: &IncompleteGame, center: Option<usize>) -> Self {
        let (known, values) = game
            .known_values()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, x)| (s.players().collect(), format(x)))
            .unzip();
        GameFile {
            n: game.n(),
            players: None,
            center,
            known,
            values,
        }
    }

    pub fn from_game(game: &TUGame) -> Self {
        let (known, values) = Coalition::all_nonempty(game.n())
            .map(|s| (s.players().collect(), format(game.value(s))))
            .unzip();
        GameFile {
            n: game.n(),
            players: None,
            center: None,
            known,
            values,
        }
    }

    pub fn to_text(&self) -> String {
        render(&serde_json::to_value(self).expect("game files serialize")) + "\n"
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Pretty JSON that keeps arrays without objects on one line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !is_flat(v) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, depth);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G3: &str = r#"{
  "n": 3,
  "center": 0,
  "known": [[0], [0, 1], [0, 2], [0, 1, 2]],
  "values": ["0", "1", "1", "3"]
}
"#;

    #[test]
    fn canonical_roundtrip_is_identical() {
        let f = GameFile::from_json(G3).unwrap();
        assert_eq!(f.to_text(), G3);
        assert_eq!(f.canonical().unwrap(), f);
    }

    #[test]
    fn canonical_sorts_and_reduces() {
        let messy = r#"{"n": 3, "center": 0, "known": [[0,1,2],[],[0,2],[0],[0,1]],
            "values": ["6/2","0","2/2","0/5","-0"]}"#;
        let f = GameFile::from_json(messy).unwrap().canonical().unwrap();
        assert_eq!(f.known, vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2]]);
        assert_eq!(f.values, vec!["0", "0", "1", "3"]);
    }

    #[test]
    fn rejects_bad_files() {
        let bad_value = G3.replace("\"3\"", "\"3/0\"");
        assert!(matches!(
            GameFile::from_json(&bad_value).unwrap().incomplete(),
            Err(Error::ParseRational(_))
        ));
        let unsorted = G3.replace("[0, 1, 2]", "[0, 2, 1]");
        assert!(GameFile::from_json(&unsorted).unwrap().incomplete().is_err());
        let short = G3.replace(", \"3\"]", "]");
        assert!(GameFile::from_json(&short).unwrap().incomplete().is_err());
        let off_center = G3.replace("\"center\": 0", "\"center\": 1");
        assert!(GameFile::from_json(&off_center)
            .unwrap()
            .player_centered()
            .is_err());
        assert!(GameFile::from_json("{\"n\": 3}").is_err());
    }
}
