function labyrinth(n) {
  var total = 0;
  for (var i = 0; i < n; i = i + 1) {
    if (i % 2 === 0) {
      for (var j = 0; j < i; j = j + 1) {
        while (total < i * j) {
          if (total % 3 === 0) {
            total += 2;
          } else {
            total += 1;
          }
        }
      }
    } else {
      total -= 1;
    }
  }
  return total;
}
module.exports = { labyrinth: labyrinth };
