function clamp(value, low, high) {
  if (value < low) {
    return low;
  }
  if (value > high) {
    return high;
  }
  return value;
}

function sum(values) {
  var total = 0;
  for (var i = 0; i < values.length; i = i + 1) {
    total += values[i];
  }
  return total;
}

function mean(values) {
  if (values.length === 0) {
    return 0;
  }
  return sum(values) / values.length;
}

function variance(values) {
  var m = mean(values);
  var acc = 0;
  for (let i = 0; i < values.length; i = i + 1) {
    var d = values[i] - m;
    acc += d * d;
  }
  return acc / values.length;
}

module.exports = { clamp: clamp, sum: sum, mean: mean, variance: variance };
