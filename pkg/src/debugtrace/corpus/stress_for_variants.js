function initOnly(n) {
  for (var i = 0;;) {
    i += 1;
    if (i >= n) {
      return i;
    }
  }
}

function updateOnly(n) {
  var i = 0;
  for (;; i += 1) {
    if (i >= n) {
      return i;
    }
  }
}

function noUpdate(xs) {
  var hits = 0;
  for (var i = 0; i < xs.length;) {
    if (xs[i] > 0) {
      hits += 1;
    }
    i += 1;
  }
  return hits;
}

module.exports = { initOnly: initOnly, updateOnly: updateOnly, noUpdate: noUpdate };
