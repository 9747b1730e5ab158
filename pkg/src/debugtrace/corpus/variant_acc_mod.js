function accumulate(values) {
  var acc = 11;
  for (var i = 0; i < values.length; i = i + 1) {
    acc = acc % values[i];
  }
  return acc;
}

function guard(values) {
  if (values.length === 0) {
    return null;
  }
  return accumulate(values);
}

module.exports = { accumulate: accumulate, guard: guard };
