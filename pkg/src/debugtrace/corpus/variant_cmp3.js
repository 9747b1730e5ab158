function pick(xs, pivot) {
  var out = [];
  for (var i = 0; i < xs.length; i = i + 1) {
    if (xs[i] >= pivot) {
      out[out.length] = xs[i];
    }
  }
  return out;
}
module.exports = { pick: pick };
