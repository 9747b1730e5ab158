function zeros(rows, cols) {
  var grid = [];
  for (var r = 0; r < rows; r = r + 1) {
    var row = [];
    for (var c = 0; c < cols; c = c + 1) {
      row[c] = 0;
    }
    grid[r] = row;
  }
  return grid;
}

function transpose(grid) {
  var out = zeros(grid[0].length, grid.length);
  for (var r = 0; r < grid.length; r = r + 1) {
    for (var c = 0; c < grid[r].length; c = c + 1) {
      out[c][r] = grid[r][c];
    }
  }
  return out;
}

module.exports = { zeros: zeros, transpose: transpose };
